// Copyright 2026 The oscnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oscnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oscnet {

namespace {

// Covariance from centred moments n_jk = <a_j^+ a_k>, m_jk = <a_j a_k>.
Mat covariance_from_moments(const CMat& n, const CMat& m) {
  const auto N = n.rows();
  Mat V(2 * N, 2 * N);
  const Mat half = 0.5 * Mat::Identity(N, N);
  V.topLeftCorner(N, N) = m.real() + n.real() + half;
  V.bottomRightCorner(N, N) = -m.real() + n.real() + half;
  V.topRightCorner(N, N) = m.imag() + n.imag();
  V.bottomLeftCorner(N, N) = V.topRightCorner(N, N).transpose();
  return 0.5 * (V + V.transpose());
}

}  // namespace

GaussianState::GaussianState(Vec mean, Mat cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto dim = mean_.size();
  if (dim == 0 || dim % 2 != 0) throw InvalidArgument("Gaussian mean must have length 2N");
  if (cov_.rows() != dim || cov_.cols() != dim) throw InvalidArgument("covariance must be 2N x 2N");
  if (!mean_.allFinite() || !cov_.allFinite()) throw InvalidArgument("non-finite Gaussian moments");
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, cov_.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("covariance must be symmetric");
  }
  const auto n = dim / 2;
  CMat test = cov_.cast<cplx>();
  test.topRightCorner(n, n) += 0.5 * kI * CMat::Identity(n, n);
  test.bottomLeftCorner(n, n) -= 0.5 * kI * CMat::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<CMat> es(test, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw InvalidArgument("covariance violates the uncertainty relation V + i Omega/2 >= 0");
  }
}

GaussianState GaussianState::vacuum(int modes) {
  return GaussianState(Vec::Zero(2 * modes), 0.5 * Mat::Identity(2 * modes, 2 * modes));
}

GaussianState GaussianState::coherent(const CVec& alpha) {
  const auto n = alpha.size();
  Vec d(2 * n);
  d << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
  return GaussianState(d, 0.5 * Mat::Identity(2 * n, 2 * n));
}

GaussianState GaussianState::thermal(const Vec& nbar) {
  const auto n = nbar.size();
  Vec diag(2 * n);
  diag << nbar.array() + 0.5, nbar.array() + 0.5;
  return GaussianState(Vec::Zero(2 * n), diag.asDiagonal());
}

GaussianState GaussianState::squeezed(int modes, int mode, double r, double phi) {
  if (mode < 0 || mode >= modes) throw InvalidArgument("mode index out of range");
  CMat n = CMat::Zero(modes, modes);
  CMat m = CMat::Zero(modes, modes);
  n(mode, mode) = std::sinh(r) * std::sinh(r);
  m(mode, mode) = -std::polar(1.0, phi) * std::sinh(r) * std::cosh(r);
  return GaussianState(Vec::Zero(2 * modes), covariance_from_moments(n, m));
}

GaussianState GaussianState::two_mode_squeezed(int modes, int m1, int m2, double r) {
  if (m1 < 0 || m2 < 0 || m1 >= modes || m2 >= modes || m1 == m2) {
    throw InvalidArgument("two distinct mode indices required");
  }
  CMat n = CMat::Zero(modes, modes);
  CMat m = CMat::Zero(modes, modes);
  n(m1, m1) = n(m2, m2) = std::sinh(r) * std::sinh(r);
  m(m1, m2) = m(m2, m1) = std::sinh(r) * std::cosh(r);
  return GaussianState(Vec::Zero(2 * modes), covariance_from_moments(n, m));
}

GaussianState GaussianState::network_thermal(const NormalModeDecomposition& d, double T) {
  const int n = d.modes();
  Vec diag(2 * n);
  for (int k = 0; k < n; ++k) diag[k] = diag[n + k] = thermal_occupation(d.nu[k], T) + 0.5;
  const Mat R = quadrature_symplectic(d);
  const Mat Rinv = R.inverse();
  Mat V = Rinv * diag.asDiagonal() * Rinv.transpose();
  V = 0.5 * (V + V.transpose()).eval();
  return GaussianState(Vec::Zero(2 * n), V);
}

GaussianState GaussianState::marginal(const std::vector<int>& keep) const {
  const int n = modes();
  const auto m = static_cast<Eigen::Index>(keep.size());
  if (m == 0) throw InvalidArgument("marginal needs at least one mode");
  std::vector<int> idx;
  for (int j : keep) {
    if (j < 0 || j >= n) throw InvalidArgument("mode index out of range");
    idx.push_back(j);
  }
  for (int j : keep) idx.push_back(n + j);
  Vec d(2 * m);
  Mat V(2 * m, 2 * m);
  for (Eigen::Index a = 0; a < 2 * m; ++a) {
    d[a] = mean_[idx[a]];
    for (Eigen::Index b = 0; b < 2 * m; ++b) V(a, b) = cov_(idx[a], idx[b]);
  }
  return GaussianState(d, V);
}

cplx chi_gaussian(const GaussianState& state, const CVec& xi) {
  const int n = state.modes();
  if (xi.size() != n) throw InvalidArgument("xi length does not match mode count");
  // xi.a^+ - xi^*.a = i zeta.r with zeta = sqrt(2) (Im xi, -Re xi).
  Vec zeta(2 * n);
  zeta << std::sqrt(2.0) * xi.imag(), -std::sqrt(2.0) * xi.real();
  const double quad = zeta.dot(state.cov() * zeta);
  const double lin = zeta.dot(state.mean());
  return std::exp(cplx{-0.5 * quad, lin});
}

double thermal_occupation(double nu, double T) {
  if (!(T > 0.0)) return 0.0;
  return 1.0 / std::expm1(nu / T);
}

cplx thermal_chi(const CVec& eta, double T, const Vec& nu) {
  if (eta.size() != nu.size()) throw InvalidArgument("eta length does not match spectrum");
  double expo = 0.0;
  for (Eigen::Index k = 0; k < eta.size(); ++k) {
    expo += (thermal_occupation(nu[k], T) + 0.5) * std::norm(eta[k]);
  }
  return {std::exp(-expo), 0.0};
}

QubitExpectation ideal_measurement(cplx chi_value) {
  if (std::abs(chi_value) > 1.0 + 1e-9) {
    throw NonPhysicalChi("|chi| = " + std::to_string(std::abs(chi_value)) + " exceeds 1");
  }
  return {chi_value.real(), chi_value.imag()};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t stream) {
  // splitmix64 finalizer applied to a combination of the three words.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ index) ^ (stream * 0xd1b54a32d192ed03ULL));
}

MeasurementRecord sample_shots(const QubitExpectation& truth, std::uint64_t shots,
                               std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be positive");
  std::mt19937_64 rng(seed);
  auto estimate = [&](double expectation, double& se) {
    const double p = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, p);
    const auto ups = draw(rng);
    const double n = static_cast<double>(shots);
    const double mean = (2.0 * static_cast<double>(ups) - n) / n;
    if (shots == 1) {
      se = 1.0;
    } else {
      const double var = std::max(0.0, (1.0 - mean * mean) * n / (n - 1.0));
      se = std::sqrt(var / n);
    }
    return mean;
  };
  MeasurementRecord rec;
  rec.shots = shots;
  double se1 = 0.0;
  double se2 = 0.0;
  rec.est_s1 = estimate(truth.s1, se1);
  rec.est_s2 = estimate(truth.s2, se2);
  rec.stderr_ = std::hypot(se1, se2);
  rec.chi_corrected = rec.signal();
  rec.chi_err = rec.stderr_;
  return rec;
}

MeasurementRecord exact_record(const QubitExpectation& truth) {
  MeasurementRecord rec;
  rec.shots = 0;
  rec.est_s1 = truth.s1;
  rec.est_s2 = truth.s2;
  rec.chi_corrected = truth.signal();
  return rec;
}

ChiFunction reduced_chi(ChiFunction chi, int total_modes, std::vector<int> keep) {
  if (keep.empty()) throw InvalidArgument("keep must be non-empty");
  for (int j : keep) {
    if (j < 0 || j >= total_modes) throw InvalidArgument("mode index out of range");
  }
  return [chi = std::move(chi), total_modes, keep = std::move(keep)](const CVec& xi_keep) {
    if (xi_keep.size() != static_cast<Eigen::Index>(keep.size())) {
      throw InvalidArgument("reduced point has the wrong length");
    }
    CVec xi = CVec::Zero(total_modes);
    for (std::size_t i = 0; i < keep.size(); ++i) xi[keep[i]] = xi_keep[static_cast<Eigen::Index>(i)];
    return chi(xi);
  };
}

}  // namespace oscnet
