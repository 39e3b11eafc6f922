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

#include "oscnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/tools/minima.hpp>

namespace oscnet {

namespace {

// Real parameter layout of the cumulant polynomial.
struct Layout {
  int modes;
  int order;
  int linear() const { return 2; }
  int anomalous() const { return linear() + 2 * modes; }
  int number() const { return anomalous() + modes * (modes + 1); }
  int size() const { return order == 1 ? anomalous() : number() + modes * modes; }
};

double max_abs(const CVec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<ChiSample> samples_from_records(const std::vector<MeasurementRecord>& records) {
  std::vector<ChiSample> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.point, r.chi_corrected, r.chi_err});
  return out;
}

MomentFit fit_moments(const std::vector<ChiSample>& samples, int order, const MomentFitOptions& opts) {
  if (order != 1 && order != 2) throw InvalidArgument("moment order must be 1 or 2");
  if (samples.empty()) throw InvalidArgument("no samples to fit");
  const int n = static_cast<int>(samples.front().point.size());
  const Layout lay{n, order};
  const int p = lay.size();

  std::vector<const ChiSample*> use;
  for (const auto& s : samples) {
    if (s.point.size() != n) throw InvalidArgument("samples have inconsistent mode counts");
    if (s.point.norm() <= opts.window + 1e-12) use.push_back(&s);
  }
  if (static_cast<int>(use.size()) < 3 * p) {
    throw InvalidArgument("moment fit needs at least " + std::to_string(3 * p) +
                          " samples inside the window, got " + std::to_string(use.size()));
  }

  const auto rows = static_cast<Eigen::Index>(2 * use.size());
  CMat A = CMat::Zero(rows / 2, p);
  CVec y(rows / 2);
  Vec w(rows / 2);
  for (std::size_t i = 0; i < use.size(); ++i) {
    const auto& s = *use[i];
    const CVec& xi = s.point;
    const auto r = static_cast<Eigen::Index>(i);
    if (std::abs(s.value) <= 0.0) throw InvalidArgument("chi sample is zero; log fit impossible");
    y[r] = std::log(s.value) + 0.5 * xi.squaredNorm();
    w[r] = std::abs(s.value) / std::max(s.err, opts.err_floor);
    A(r, 0) = 1.0;
    A(r, 1) = kI;
    for (int j = 0; j < n; ++j) {
      A(r, lay.linear() + 2 * j) = 2.0 * kI * xi[j].imag();
      A(r, lay.linear() + 2 * j + 1) = -2.0 * kI * xi[j].real();
    }
    if (order == 2) {
      int c = lay.anomalous();
      for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
          const double mult = (j == k) ? 0.5 : 1.0;
          const cplx P = xi[j] * xi[k];
          A(r, c++) = mult * (P + std::conj(P));
          A(r, c++) = mult * kI * (std::conj(P) - P);
        }
      }
      c = lay.number();
      for (int j = 0; j < n; ++j) {
        A(r, c++) = -std::norm(xi[j]);
        for (int k = j + 1; k < n; ++k) {
          const cplx Q = xi[j] * std::conj(xi[k]);
          A(r, c++) = -(Q + std::conj(Q));
          A(r, c++) = -kI * (Q - std::conj(Q));
        }
      }
    }
  }

  Mat Ar(rows, p);
  Vec yr(rows);
  Ar << (w.asDiagonal() * A.real()), (w.asDiagonal() * A.imag());
  yr << w.cwiseProduct(y.real()), w.cwiseProduct(y.imag());
  Eigen::ColPivHouseholderQR<Mat> qr(Ar);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    throw RankDeficient("design matrix has rank " + std::to_string(qr.rank()) + " < " +
                        std::to_string(p) + "; points are not in general position");
  }
  const Vec sol = qr.solve(yr);
  const Mat R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Mat Rinv = R.triangularView<Eigen::Upper>().solve(Mat::Identity(p, p));
  const Mat cov = qr.colsPermutation() * (Rinv * Rinv.transpose()) * qr.colsPermutation().transpose();

  MomentFit fit;
  fit.order = order;
  fit.used_samples = static_cast<int>(use.size());
  fit.chi2 = (Ar * sol - yr).squaredNorm();
  fit.log_norm = {sol[0], sol[1]};
  fit.mean.resize(n);
  fit.mean_stderr.resize(n);
  for (int j = 0; j < n; ++j) {
    const int c = lay.linear() + 2 * j;
    fit.mean[j] = {sol[c], sol[c + 1]};
    fit.mean_stderr[j] = std::sqrt(cov(c, c) + cov(c + 1, c + 1));
  }
  if (order == 2) {
    CMat C(n, n), N(n, n);
    fit.number_stderr.resize(n, n);
    int c = lay.anomalous();
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k, c += 2) C(j, k) = C(k, j) = cplx{sol[c], sol[c + 1]};
    }
    c = lay.number();
    for (int j = 0; j < n; ++j) {
      N(j, j) = sol[c];
      fit.number_stderr(j, j) = std::sqrt(cov(c, c));
      ++c;
      for (int k = j + 1; k < n; ++k, c += 2) {
        N(j, k) = {sol[c], sol[c + 1]};
        N(k, j) = std::conj(N(j, k));
        fit.number_stderr(j, k) = fit.number_stderr(k, j) = std::sqrt(cov(c, c) + cov(c + 1, c + 1));
      }
    }
    const CVec& m = fit.mean;
    fit.number = N + m.conjugate() * m.transpose();
    fit.anomalous = C + m * m.transpose();
  }
  return fit;
}

TemperatureEstimate estimate_temperature(const std::vector<ChiSample>& samples, const Vec& nu,
                                         const TemperatureOptions& opts) {
  const auto n = nu.size();
  if (n == 0 || nu.minCoeff() <= 0.0) throw InvalidArgument("frequencies must be positive");
  if (samples.empty()) throw InvalidArgument("no samples");
  std::vector<bool> probed(n, false);
  for (const auto& s : samples) {
    if (s.point.size() != n) throw InvalidArgument("sample length does not match spectrum");
    for (Eigen::Index k = 0; k < n; ++k) probed[k] = probed[k] || std::abs(s.point[k]) > 0.0;
  }
  if (std::find(probed.begin(), probed.end(), false) != probed.end()) {
    throw InvalidArgument("every normal mode must be probed by some sample");
  }
  const double lo = opts.T_min > 0.0 ? opts.T_min : 1e-3 * nu.minCoeff();
  const double hi = opts.T_max > 0.0 ? opts.T_max : 1e6 * nu.maxCoeff();
  if (!(hi > lo)) throw InvalidArgument("temperature bounds are empty");

  auto residual = [&](double T) {
    double r = 0.0;
    for (const auto& s : samples) {
      const double e = std::max(s.err, opts.err_floor);
      r += std::norm(s.value - thermal_chi(s.point, T, nu)) / (e * e);
    }
    return r;
  };
  auto in_log = [&](double x) { return residual(std::exp(x)); };

  const double a = std::log(lo);
  const double b = std::log(hi);
  const int grid = std::max(opts.grid, 3);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double v = in_log(a + (b - a) * i / (grid - 1));
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double step = (b - a) / (grid - 1);
  const double left = std::max(a, a + (best - 1) * step);
  const double right = std::min(b, a + (best + 1) * step);
  const auto [x, val] = boost::math::tools::brent_find_minima(in_log, left, right, 40);

  TemperatureEstimate est;
  est.T = std::exp(x);
  est.residual = val;
  if (best_val < val) {
    est.T = std::exp(a + best * step);
    est.residual = best_val;
  }
  est.dof = std::max(1, 2 * static_cast<int>(samples.size()) - 1);
  est.threshold = boost::math::quantile(boost::math::chi_squared(est.dof), 0.99);
  est.not_thermal = est.residual > est.threshold;
  est.at_lower_bound = est.T <= lo * std::exp(step);
  return est;
}

std::vector<CVec> difference_set(const std::vector<CVec>& nodes, double tol) {
  std::vector<CVec> out;
  for (const auto& p : nodes) {
    for (const auto& q : nodes) {
      const CVec d = p - q;
      const bool seen = std::any_of(out.begin(), out.end(),
                                    [&](const CVec& e) { return max_abs(e - d) <= tol; });
      if (!seen) out.push_back(d);
    }
  }
  return out;
}

BochnerResult bochner_check(const std::vector<ChiSample>& samples, const BochnerOptions& opts) {
  if (samples.empty()) throw InsufficientClosure("no samples");
  const auto n = samples.size();
  const auto modes = samples.front().point.size();
  for (const auto& s : samples) {
    if (s.point.size() != modes) throw InvalidArgument("samples have inconsistent mode counts");
  }

  BochnerResult res;
  double max_err = 0.0;
  for (const auto& s : samples) max_err = std::max(max_err, s.err);
  res.tol = std::max(3.0 * max_err, opts.min_tol);

  auto find = [&](const CVec& d) -> std::optional<cplx> {
    const double tol = opts.match_tol * (1.0 + max_abs(d));
    for (const auto& s : samples) {
      if (max_abs(s.point - d) <= tol) return s.value;
    }
    for (const auto& s : samples) {
      if (max_abs(s.point + d) <= tol) return std::conj(s.value);
    }
    if (max_abs(d) <= tol) return cplx{1.0, 0.0};
    return std::nullopt;
  };

  const auto origin = find(CVec::Zero(modes));
  bool has_origin = false;
  for (const auto& s : samples) has_origin = has_origin || max_abs(s.point) <= opts.match_tol;
  res.imputed_origin = !has_origin;
  res.normalized = std::abs(*origin - 1.0) <= res.tol;

  // Distinct nodes, then greedy removal of the node with most missing differences.
  std::vector<int> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    bool dup = false;
    for (int j : nodes) dup = dup || max_abs(samples[i].point - samples[j].point) <= opts.match_tol;
    if (!dup) nodes.push_back(static_cast<int>(i));
  }
  const auto m = nodes.size();
  std::vector<std::vector<std::optional<cplx>>> table(m, std::vector<std::optional<cplx>>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) table[a][b] = find(samples[nodes[a]].point - samples[nodes[b]].point);
  }
  std::vector<bool> alive(m, true);
  while (true) {
    int worst = -1;
    int worst_missing = 0;
    for (std::size_t a = 0; a < m; ++a) {
      if (!alive[a]) continue;
      int missing = 0;
      for (std::size_t b = 0; b < m; ++b) missing += (alive[b] && !table[a][b]) ? 1 : 0;
      if (missing > worst_missing ||
          (missing == worst_missing && missing > 0 &&
           samples[nodes[a]].point.norm() > samples[nodes[worst]].point.norm())) {
        worst = static_cast<int>(a);
        worst_missing = missing;
      }
    }
    if (worst < 0) break;
    alive[worst] = false;
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (alive[a]) res.used.push_back(nodes[a]);
  }
  const auto need = std::min<std::size_t>(3, m);
  if (res.used.size() < need) {
    throw InsufficientClosure("only " + std::to_string(res.used.size()) +
                              " points have all pairwise differences sampled");
  }

  const auto k = static_cast<Eigen::Index>(res.used.size());
  CMat B(k, k);
  std::vector<std::size_t> idx;
  for (std::size_t a = 0; a < m; ++a) {
    if (alive[a]) idx.push_back(a);
  }
  for (Eigen::Index a = 0; a < k; ++a) {
    const CVec& xa = samples[nodes[idx[a]]].point;
    for (Eigen::Index b = 0; b < k; ++b) {
      const CVec& xb = samples[nodes[idx[b]]].point;
      // xi_a . xi_b^* - xi_a^* . xi_b = 2 i Im(xi_a . xi_b^*)
      const cplx cross = xb.dot(xa);
      B(a, b) = *table[idx[a]][idx[b]] * std::exp(kI * cross.imag());
    }
  }
  const CMat H = 0.5 * (B + B.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
  res.min_eigenvalue = es.eigenvalues().minCoeff();
  res.pass = res.normalized && res.min_eigenvalue >= -res.tol;
  return res;
}

std::vector<CVec> star_grid(int modes, double spacing, int rings, int angles, bool pairs) {
  if (modes < 1 || rings < 1 || angles < 1 || !(spacing > 0.0)) {
    throw InvalidArgument("grid needs positive modes, rings, angles and spacing");
  }
  std::vector<CVec> pts;
  pts.push_back(CVec::Zero(modes));
  for (int j = 0; j < modes; ++j) {
    for (int r = 1; r <= rings; ++r) {
      for (int a = 0; a < angles; ++a) {
        CVec p = CVec::Zero(modes);
        p[j] = std::polar(spacing * r, 2.0 * M_PI * a / angles);
        pts.push_back(p);
      }
    }
  }
  if (pairs) {
    for (int j = 0; j < modes; ++j) {
      for (int k = j + 1; k < modes; ++k) {
        for (int r = 1; r <= rings; ++r) {
          for (int a = 0; a < angles; ++a) {
            for (int b = 0; b < 4; ++b) {
              CVec p = CVec::Zero(modes);
              const double th = 2.0 * M_PI * a / angles;
              p[j] = std::polar(spacing * r / std::sqrt(2.0), th);
              p[k] = std::polar(spacing * r / std::sqrt(2.0), th + 0.5 * M_PI * b);
              pts.push_back(p);
            }
          }
        }
      }
    }
  }
  return pts;
}

}  // namespace oscnet
