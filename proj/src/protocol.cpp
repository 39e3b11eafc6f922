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

#include "oscnet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "oscnet/integrals.hpp"

namespace oscnet {

double min_interaction_time(const NormalModeDecomposition& d, double gap_tol) {
  const int n = d.modes();
  if (n == 1) return std::numbers::pi / (2.0 * d.nu[0]);
  double gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) gap = std::min(gap, std::abs(d.nu[j] - d.nu[k]));
  }
  if (gap <= gap_tol) {
    std::ostringstream os;
    os << "smallest normal-mode gap " << gap << " is below tolerance " << gap_tol;
    throw DegenerateSpectrum(os.str());
  }
  return std::numbers::pi / gap;
}

double select_interaction_time(const NormalModeDecomposition& d, double requested) {
  return std::max(2.0 * min_interaction_time(d), requested);
}

CMat MMatrix::full() const {
  const auto n = M1.rows();
  CMat M(2 * n, 2 * n);
  M << M1, M2, M3, M4;
  return M;
}

MMatrix build_M(const NormalModeDecomposition& d, double t, const std::optional<Vec>& kappa,
                double g_tol) {
  if (!(t > 0.0)) throw InvalidArgument("interaction time must be positive");
  const int n = d.modes();
  if (kappa && kappa->size() != n) throw InvalidArgument("kappa length does not match mode count");
  for (int l = 0; l < n; ++l) {
    if (std::abs(d.G[l]) <= g_tol) {
      throw AssumptionViolation("normal mode " + std::to_string(l) +
                                " does not couple to the probe (|G| <= g_tol)");
    }
  }
  MMatrix m;
  m.t = t;
  m.kappa = kappa;
  m.M1.resize(n, n);
  m.M2.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const double half_rate = kappa ? 0.5 * (*kappa)[k] : 0.0;
    for (int l = 0; l < n; ++l) {
      const cplx diff{-half_rate, -(d.nu[k] - d.nu[l])};
      const cplx sum{-half_rate, -(d.nu[k] + d.nu[l])};
      m.M1(k, l) = d.G[k] / d.G[l] / t * detail::exp_integral(diff, t);
      m.M2(k, l) = d.G[k] / std::conj(d.G[l]) / t * detail::exp_integral(sum, t);
    }
  }
  m.M3 = m.M2.conjugate();
  m.M4 = m.M1.conjugate();
  const CMat full = m.full();
  m.det = full.partialPivLu().determinant();
  Eigen::JacobiSVD<CMat> svd(full);
  const Vec& sv = svd.singularValues();
  m.cond = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                   : std::numeric_limits<double>::infinity();
  return m;
}

std::vector<Tone> tones(const CouplingProfile& p) {
  std::vector<Tone> out;
  out.reserve(2 * p.modes());
  const auto& d = p.decomp;
  for (int l = 0; l < p.modes(); ++l) {
    out.push_back({kI / p.t * p.B[l] / std::conj(d.G[l]), -d.nu[l]});
    out.push_back({-kI / p.t * std::conj(p.B[l]) / d.G[l], d.nu[l]});
  }
  return out;
}

CouplingProfile synthesize_profile(const NormalModeDecomposition& d,
                                   const DisplacementTarget& target, double t,
                                   const std::optional<Vec>& kappa,
                                   const SynthesisOptions& opts) {
  const int n = d.modes();
  if (target.values.size() != n) throw InvalidArgument("target length does not match mode count");
  if (!target.values.allFinite()) throw InvalidArgument("target must be finite");

  const MMatrix m = build_M(d, t, kappa, opts.g_tol);
  if (!(m.cond <= opts.max_cond)) {
    std::ostringstream os;
    os << "cond(M) = " << m.cond << " exceeds " << opts.max_cond << " at t = " << t
       << "; increase the interaction time";
    throw IllConditioned(os.str());
  }

  const CVec beta = target.basis == Basis::normal
                        ? target.values
                        : local_normal_convert(d, target.values, Direction::local_to_normal);
  CVec rhs(2 * n);
  rhs << -beta.conjugate(), beta;
  const CMat full = m.full();
  const auto lu = full.fullPivLu();
  CVec x = lu.solve(rhs);
  x += lu.solve(rhs - full * x);

  // x must have the structure (-B^*, B).
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  const double mismatch = (x.head(n) + x.tail(n).conjugate()).cwiseAbs().maxCoeff() / scale;
  const double tol =
      std::max(opts.symmetry_tol, 100.0 * m.cond * std::numeric_limits<double>::epsilon());
  if (mismatch > tol) {
    std::ostringstream os;
    os << "solution lost its conjugate-pair structure (mismatch " << mismatch << ")";
    throw SymmetryBreak(os.str());
  }

  CouplingProfile p;
  p.B = 0.5 * (x.tail(n) - x.head(n).conjugate());
  p.t = t;
  p.decomp = d;
  p.kappa = kappa;
  return p;
}

cplx evaluate_g_complex(const CouplingProfile& p, double s) {
  cplx g{0.0, 0.0};
  for (const Tone& tone : tones(p)) g += tone.amplitude * std::exp(kI * (tone.frequency * s));
  return g;
}

double evaluate_g(const CouplingProfile& p, double s) {
  // The two tones of each mode are complex conjugates of each other.
  double g = 0.0;
  const auto& d = p.decomp;
  for (int l = 0; l < p.modes(); ++l) {
    const cplx a = kI / p.t * p.B[l] / std::conj(d.G[l]);
    g += 2.0 * (a * std::exp(-kI * (d.nu[l] * s))).real();
  }
  return g;
}

CVec beta_from_profile(const CouplingProfile& p) {
  const auto& d = p.decomp;
  const auto ts = tones(p);
  CVec beta(p.modes());
  for (int k = 0; k < p.modes(); ++k) {
    cplx acc{0.0, 0.0};
    for (const Tone& tone : ts) {
      acc += tone.amplitude * detail::exp_integral({0.0, tone.frequency + d.nu[k]}, p.t);
    }
    beta[k] = -kI * std::conj(d.G[k]) * acc;
  }
  return beta;
}

CVec beta_from_profile(const CouplingProfile& p, const Vec& kappa) {
  if (kappa.size() != p.modes()) throw InvalidArgument("kappa length does not match mode count");
  const auto& d = p.decomp;
  const auto ts = tones(p);
  CVec eta(p.modes());
  for (int k = 0; k < p.modes(); ++k) {
    cplx acc{0.0, 0.0};
    for (const Tone& tone : ts) {
      acc += tone.amplitude *
             detail::exp_integral({-0.5 * kappa[k], tone.frequency + d.nu[k]}, p.t);
    }
    eta[k] = 2.0 * kI * std::conj(d.G[k]) * acc;
  }
  return eta;
}

CVec beta_from_waveform(const std::function<double(double)>& g,
                        const NormalModeDecomposition& d, double t) {
  using boost::math::quadrature::gauss_kronrod;
  const int n = d.modes();
  const double period = 2.0 * std::numbers::pi / d.nu.maxCoeff();
  const int chunks = std::max(1, static_cast<int>(std::ceil(t / period)));
  CVec beta(n);
  for (int k = 0; k < n; ++k) {
    double re = 0.0;
    double im = 0.0;
    for (int c = 0; c < chunks; ++c) {
      const double a = t * c / chunks;
      const double b = t * (c + 1) / chunks;
      re += gauss_kronrod<double, 31>::integrate(
          [&](double s) { return g(s) * std::cos(d.nu[k] * s); }, a, b, 15, 1e-13);
      im += gauss_kronrod<double, 31>::integrate(
          [&](double s) { return g(s) * std::sin(d.nu[k] * s); }, a, b, 15, 1e-13);
    }
    beta[k] = -kI * std::conj(d.G[k]) * cplx{re, im};
  }
  return beta;
}

double g_max(const CouplingProfile& p, int samples_per_period) {
  if (samples_per_period < 1) throw InvalidArgument("samples_per_period must be positive");
  if (p.B.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const double h = 2.0 * std::numbers::pi / (p.decomp.nu.maxCoeff() * samples_per_period);
  const long steps = std::max(2L, static_cast<long>(std::ceil(p.t / h)));
  const double dh = p.t / steps;
  std::vector<double> mag(steps + 1);
  for (long i = 0; i <= steps; ++i) mag[i] = std::abs(evaluate_g(p, dh * i));

  std::vector<std::pair<double, long>> peaks;
  for (long i = 0; i <= steps; ++i) {
    const bool left = i == 0 || mag[i] >= mag[i - 1];
    const bool right = i == steps || mag[i] >= mag[i + 1];
    if (left && right) peaks.emplace_back(mag[i], i);
  }
  std::sort(peaks.begin(), peaks.end(), std::greater<>());
  double best = peaks.front().first;
  const std::size_t keep = std::min<std::size_t>(peaks.size(), 16);
  for (std::size_t j = 0; j < keep; ++j) {
    if (peaks[j].first < 0.9 * best) break;
    const double centre = dh * peaks[j].second;
    const double lo = std::max(0.0, centre - dh);
    const double hi = std::min(p.t, centre + dh);
    const auto res = boost::math::tools::brent_find_minima(
        [&](double s) { return -std::abs(evaluate_g(p, s)); }, lo, hi, 45);
    best = std::max(best, -res.second);
  }
  return best;
}

double g_rms(const CouplingProfile& p) {
  const auto ts = tones(p);
  cplx acc{0.0, 0.0};
  for (const Tone& a : ts) {
    for (const Tone& b : ts) {
      acc += a.amplitude * std::conj(b.amplitude) *
             detail::exp_integral({0.0, a.frequency - b.frequency}, p.t);
    }
  }
  return std::sqrt(std::max(0.0, acc.real()) / p.t);
}

void write_profile_csv(std::ostream& os, const CouplingProfile& p, int samples_per_period) {
  const double h = 2.0 * std::numbers::pi / (p.decomp.nu.maxCoeff() * samples_per_period);
  const long steps = std::max(1L, static_cast<long>(std::ceil(p.t / h)));
  os << "s,g\n";
  os << std::setprecision(12);
  for (long i = 0; i <= steps; ++i) {
    const double s = p.t * i / steps;
    os << s << ',' << evaluate_g(p, s) << '\n';
  }
}

}  // namespace oscnet
