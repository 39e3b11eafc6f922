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

#include "oscnet/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "oscnet/integrals.hpp"

namespace oscnet {

namespace {

constexpr double kKappaLimit = 1e-12;

void check_modes(const CouplingProfile& profile, const DecoherenceSpec& deco) {
  deco.validate();
  if (deco.modes() != profile.modes()) {
    throw InvalidArgument("decoherence spec and profile have different mode counts");
  }
}

}  // namespace

DecoherenceSpec DecoherenceSpec::none(int modes) {
  return {Vec::Zero(modes), Vec::Zero(modes), 0.0, 0.0, 0.0};
}

DecoherenceSpec DecoherenceSpec::thermal_bath(const NormalModeDecomposition& decomp, double kappa,
                                              double T) {
  const int n = decomp.modes();
  DecoherenceSpec d = none(n);
  d.kappa.setConstant(kappa);
  for (int k = 0; k < n; ++k) d.Nbar[k] = thermal_occupation(decomp.nu[k], T);
  d.validate();
  return d;
}

void DecoherenceSpec::validate() const {
  if (kappa.size() != Nbar.size()) throw InvalidArgument("kappa and Nbar lengths differ");
  if (kappa.size() > 0 && (kappa.minCoeff() < 0.0 || !kappa.allFinite())) {
    throw InvalidArgument("kappa must be finite and non-negative");
  }
  if (Nbar.size() > 0 && (Nbar.minCoeff() < 0.0 || !Nbar.allFinite())) {
    throw InvalidArgument("Nbar must be finite and non-negative");
  }
  if (!(Gamma1 >= 0.0) || !(Gamma2 >= 0.0) || !(Nq >= 0.0)) {
    throw InvalidArgument("qubit rates and occupation must be non-negative");
  }
}

CVec eta_from_profile(const CouplingProfile& profile, const DecoherenceSpec& deco) {
  check_modes(profile, deco);
  return beta_from_profile(profile, deco.kappa);
}

CVec mu_k(const CouplingProfile& profile, const DecoherenceSpec& deco, double s) {
  check_modes(profile, deco);
  const auto& d = profile.decomp;
  const auto tn = tones(profile);
  CVec mu(profile.modes());
  for (int k = 0; k < profile.modes(); ++k) {
    const double b = deco.kappa[k] <= kKappaLimit ? 0.0 : 0.5 * deco.kappa[k];
    cplx sum = 0.0;
    for (const auto& tone : tn) {
      sum += tone.amplitude * detail::sinh_weighted_integral(tone.frequency + d.nu[k], b, s);
    }
    mu[k] = 2.0 * kI * std::conj(d.G[k]) * sum;
  }
  return mu;
}

double damping_factor(const CouplingProfile& profile, const DecoherenceSpec& deco, double t,
                      const DampingOptions& opts) {
  check_modes(profile, deco);
  if (std::isnan(t)) t = profile.t;
  if (!(t > 0.0)) throw InvalidArgument("damping time must be positive");
  const auto& d = profile.decomp;
  const auto tn = tones(profile);
  const Vec Delta = deco.Delta();

  double f = deco.gamma() * t;
  const CVec mu_t = mu_k(profile, deco, t);
  // Quadrature panels no longer than half the fastest oscillation of mu_k.
  double fastest = 0.0;
  for (const auto& tone : tn) fastest = std::max(fastest, std::abs(tone.frequency));
  fastest += d.nu.maxCoeff();
  const int panels = std::max(1, static_cast<int>(std::ceil(t * fastest / M_PI)));
  const double h = t / panels;

  for (int k = 0; k < profile.modes(); ++k) {
    const double kap = deco.kappa[k];
    if (kap <= 0.0) continue;
    f += Delta[k] * (-std::expm1(-kap * t)) * std::norm(mu_t[k]);
    const double b = kap <= kKappaLimit ? 0.0 : 0.5 * kap;
    const cplx pref = 2.0 * kI * std::conj(d.G[k]);
    auto mu_sq = [&](double s) {
      cplx sum = 0.0;
      for (const auto& tone : tn) {
        sum += tone.amplitude * detail::sinh_weighted_integral(tone.frequency + d.nu[k], b, s);
      }
      return std::norm(pref * sum);
    };
    double integral = 0.0;
    for (int p = 0; p < panels; ++p) {
      integral += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          mu_sq, p * h, (p + 1) * h, 15, opts.rel_tol);
    }
    f += kap * Delta[k] * integral;
  }
  return std::max(f, 0.0);
}

cplx measured_signal(cplx chi_true, double f) {
  if (!(f >= 0.0)) throw InvalidArgument("damping exponent must be non-negative");
  return chi_true * std::exp(-f);
}

MeasurementRecord correct_signal(MeasurementRecord record, double f) {
  if (!(f >= 0.0)) throw InvalidArgument("damping exponent must be non-negative");
  const double gain = std::exp(f);
  record.f = f;
  record.chi_corrected = record.signal() * gain;
  record.chi_err = record.stderr_ * gain;
  record.over_amplified = gain > 100.0;
  return record;
}

Vec kappa_from_spectral_density(const std::function<double(double)>& f_env, const Vec& nu) {
  Vec kappa(nu.size());
  for (Eigen::Index k = 0; k < nu.size(); ++k) {
    const double v = f_env(nu[k]);
    kappa[k] = 2.0 * M_PI * v * v;
  }
  return kappa;
}

double validity_horizon(const DecoherenceSpec& deco, const NetworkSpec& spec) {
  deco.validate();
  const double inf = std::numeric_limits<double>::infinity();
  const double kmax = spec.K.cwiseAbs().maxCoeff();
  if (kmax == 0.0) return inf;
  double horizon = inf;
  for (int k = 0; k < deco.modes(); ++k) {
    const double rate = deco.kappa[k] * deco.Nbar[k];
    if (rate > 0.0) horizon = std::min(horizon, 1.0 / rate);
  }
  if (horizon == inf) return inf;
  return horizon * spec.omega.minCoeff() / kmax;
}

QubitExpectation brute_force_lindblad(const FockEnsemble& initial, const CouplingProfile& profile,
                                      const NetworkSpec& spec, const DecoherenceSpec& deco, double t,
                                      const LindbladOptions& opts, LindbladDiagnostics* diagnostics) {
  namespace ode = boost::numeric::odeint;
  deco.validate();
  if (spec.modes() != 1 || initial.modes() != 1 || deco.modes() != 1) {
    throw InvalidArgument("the Lindblad oracle handles a single oscillator");
  }
  if (!(t > 0.0)) throw InvalidArgument("evolution time must be positive");
  const int D = initial.truncation();
  const Eigen::Index n = 2 * D;

  // Qubit index major: |e> = 0, |g> = 1.
  auto on_qubit = [&](const CMat& q) {
    SpMat out(n, n);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (q(i, j) == cplx{}) continue;
        for (int m = 0; m < D; ++m) trip.emplace_back(i * D + m, j * D + m, q(i, j));
      }
    }
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
  };
  auto on_oscillator = [&](const SpMat& op, const CMat& q) {
    SpMat out(n, n);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (q(i, j) == cplx{}) continue;
        for (int k = 0; k < op.outerSize(); ++k) {
          for (SpMat::InnerIterator it(op, k); it; ++it) {
            trip.emplace_back(i * D + it.row(), j * D + it.col(), q(i, j) * it.value());
          }
        }
      }
    }
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
  };

  CMat id2 = CMat::Identity(2, 2);
  CMat s3(2, 2), sminus(2, 2), splus(2, 2);
  s3 << 1, 0, 0, -1;
  sminus << 0, 0, 1, 0;  // |g><e|
  splus << 0, 1, 0, 0;   // |e><g|

  const SpMat a = fock_annihilation(1, 0, D);
  const SpMat adag = a.adjoint();
  const SpMat H0 = on_oscillator(fock_hamiltonian(spec, D), id2);
  const SpMat X = on_oscillator(fock_probe_quadrature(1, 0, D), s3);

  std::vector<SpMat> jumps;
  const double kap = deco.kappa[0];
  const double nb = deco.Nbar[0];
  if (kap * (nb + 1.0) > 0.0) jumps.push_back(std::sqrt(kap * (nb + 1.0)) * on_oscillator(a, id2));
  if (kap * nb > 0.0) jumps.push_back(std::sqrt(kap * nb) * on_oscillator(adag, id2));
  if (deco.Gamma1 * (deco.Nq + 1.0) > 0.0) {
    jumps.push_back(std::sqrt(deco.Gamma1 * (deco.Nq + 1.0)) * on_qubit(sminus));
  }
  if (deco.Gamma1 * deco.Nq > 0.0) jumps.push_back(std::sqrt(deco.Gamma1 * deco.Nq) * on_qubit(splus));
  if (deco.Gamma2 > 0.0) jumps.push_back(std::sqrt(deco.Gamma2) * on_qubit(s3));

  SpMat decay(n, n);
  for (const auto& c : jumps) decay += SpMat(c.adjoint() * c);
  const SpMat A = H0 - 0.5 * kI * decay;  // H_eff = A + g X

  using State = std::vector<cplx>;
  auto rhs = [&](const State& x, State& dxdt, double s) {
    const double g = evaluate_g(profile, s);
    Eigen::Map<const CMat> rho(x.data(), n, n);
    Eigen::Map<CMat> drho(dxdt.data(), n, n);
    const CMat left = A * rho + g * (X * rho);
    // rho H_eff^+ = (H_eff rho^+)^+ = (H_eff rho)^+ for Hermitian rho.
    drho = -kI * left + kI * left.adjoint();
    for (std::size_t j = 0; j < jumps.size(); ++j) {
      const CMat cr = jumps[j] * rho;
      drho += jumps[j] * cr.adjoint();
    }
  };

  const CMat rho_osc = initial.density_matrix();
  CMat rho0(n, n);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) rho0.block(i * D, j * D, D, D) = 0.5 * rho_osc;
  }
  State x(rho0.data(), rho0.data() + n * n);

  double worst = 0.0;
  auto top_population = [&](const State& y) {
    return std::real(y[(D - 1) * n + (D - 1)] + y[(2 * D - 1) * n + (2 * D - 1)]);
  };
  auto observe = [&](const State& y, double) { worst = std::max(worst, top_population(y)); };
  const double fastest = std::max(spec.omega.maxCoeff(), 1e-12);
  auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol, ode::runge_kutta_dopri5<State>());
  ode::integrate_adaptive(stepper, rhs, x, 0.0, t, 1e-3 / fastest, observe);
  if (worst > opts.leak_tol) {
    throw TruncationLeak("top Fock level population " + std::to_string(worst) + " exceeds " +
                         std::to_string(opts.leak_tol));
  }

  Eigen::Map<const CMat> rho(x.data(), n, n);
  cplx coherence = 0.0;
  for (int m = 0; m < D; ++m) coherence += rho(D + m, m);
  if (diagnostics != nullptr) {
    diagnostics->trace = rho.trace().real();
    const CMat herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(herm, Eigen::EigenvaluesOnly);
    diagnostics->min_eigenvalue = es.eigenvalues().minCoeff();
    diagnostics->boundary_population = worst;
  }
  const cplx signal = 2.0 * coherence;
  return {signal.real(), signal.imag()};
}

}  // namespace oscnet
