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

#include "oscnet/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "oscnet/dynamics.hpp"
#include "oscnet/integrals.hpp"

namespace oscnet {

Mat delta_beta_covariance(const NormalModeDecomposition& decomp, double t, double eps) {
  if (!(t > 0.0)) throw InvalidArgument("interaction time must be positive");
  if (!(eps >= 0.0)) throw InvalidArgument("noise strength must be non-negative");
  const int n = decomp.modes();
  Mat V(n, n);
  for (int k = 0; k < n; ++k) {
    V(k, k) = eps * std::norm(decomp.G[k]) * t;
    for (int l = k + 1; l < n; ++l) {
      const cplx z = kI * (decomp.nu[k] - decomp.nu[l]);
      V(k, l) = V(l, k) =
          eps * std::real(std::conj(decomp.G[k]) * decomp.G[l] * detail::exp_integral(z, t));
    }
  }
  return V;
}

Vec resolution_spectrum(const Mat& V) {
  if (V.rows() != V.cols()) throw InvalidArgument("covariance must be square");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (V + V.transpose()), Eigen::EigenvaluesOnly);
  Vec out = es.eigenvalues();
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = std::sqrt(std::max(out[i], 0.0));
  return out;
}

MonteCarloResult monte_carlo_delta_beta(const NormalModeDecomposition& decomp, double t, double eps,
                                        const MonteCarloOptions& opts) {
  if (!(t > 0.0)) throw InvalidArgument("interaction time must be positive");
  if (!(eps >= 0.0)) throw InvalidArgument("noise strength must be non-negative");
  if (opts.realizations < 2) throw InvalidArgument("at least two realizations are required");
  const int n = decomp.modes();
  const double dt_req = opts.dt > 0.0 ? opts.dt : 0.005 / decomp.nu.maxCoeff();
  const auto steps = static_cast<Eigen::Index>(std::ceil(t / dt_req));
  const double dt = t / static_cast<double>(steps);

  // Exact integral of e^{i nu_k s} over each step, with the -i G_k^* prefactor.
  CMat weight(steps, n);
  for (int k = 0; k < n; ++k) {
    const cplx pref = -kI * std::conj(decomp.G[k]) * detail::exp_integral(kI * decomp.nu[k], dt);
    for (Eigen::Index j = 0; j < steps; ++j) {
      weight(j, k) = pref * std::exp(kI * decomp.nu[k] * (static_cast<double>(j) * dt));
    }
  }

  const auto R = opts.realizations;
  CMat samples(static_cast<Eigen::Index>(R), n);
  const double sigma = std::sqrt(eps / dt);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    Vec z(steps);
    for (std::uint64_t r = begin; r < end; ++r) {
      std::mt19937_64 rng(derive_seed(opts.seed, r, 0x6e6f697365ULL));
      std::normal_distribution<double> normal(0.0, sigma);
      for (Eigen::Index j = 0; j < steps; ++j) z[j] = normal(rng);
      samples.row(static_cast<Eigen::Index>(r)) = (weight.transpose() * z.cast<cplx>()).transpose();
    }
  };
  const auto workers = static_cast<std::uint64_t>(std::max(1, opts.workers));
  if (workers == 1) {
    work(0, R);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (R + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const auto b = std::min(R, w * chunk);
      const auto e = std::min(R, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  const double m = static_cast<double>(R);
  MonteCarloResult res;
  res.dt = dt;
  res.realizations = R;
  res.mean = samples.colwise().mean().transpose();
  res.mean_stderr.resize(n);
  res.cov.resize(n, n);
  res.cov_stderr.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const Vec re = samples.col(k).real();
    const Vec im = samples.col(k).imag();
    const double var_re = (re.array() - re.mean()).square().sum() / (m - 1.0);
    const double var_im = (im.array() - im.mean()).square().sum() / (m - 1.0);
    res.mean_stderr[k] = std::sqrt((var_re + var_im) / m);
    for (int l = 0; l < n; ++l) {
      // The ensemble mean vanishes, so the raw second moment estimates V.
      const Vec prod = (samples.col(k).array() * samples.col(l).array().conjugate()).real();
      const double mean = prod.mean();
      const double var = (prod.array() - mean).square().sum() / (m - 1.0);
      res.cov(k, l) = mean;
      res.cov_stderr(k, l) = std::sqrt(var / m);
    }
  }
  return res;
}

}  // namespace oscnet
