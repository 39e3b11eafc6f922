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

#include "oscnet/validation.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "oscnet/analysis.hpp"
#include "oscnet/chain.hpp"
#include "oscnet/decoherence.hpp"
#include "oscnet/fock.hpp"
#include "oscnet/noise.hpp"
#include "oscnet/pipeline.hpp"
#include "oscnet/protocol.hpp"
#include "oscnet/states.hpp"

namespace oscnet {

namespace {

// Reference configuration of the eight-site chain study.
const ChainSpec kFigChain{8, 1.0, 0.2};
constexpr double kFigKappa = 1e-6;
constexpr double kFigT = 200.0;
const double kFigTime = 100.0 * 2.0 * M_PI;

CheckResult timed(const std::string& name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

cplx random_point(std::mt19937_64& rng, double max_abs) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(max_abs * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
}

// Random single-mode catalog state together with its Fock form.
TestState random_single_mode_state(std::mt19937_64& rng, int pick) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  StateParams p;
  switch (pick % 5) {
    case 0:
      p.name = "vacuum";
      break;
    case 1:
      p.name = "coherent";
      p.alpha = CVec::Constant(1, random_point(rng, 0.7));
      break;
    case 2:
      p.name = "thermal";
      p.nbar = Vec::Constant(1, 0.3 * u(rng));
      break;
    case 3:
      p.name = "squeezed";
      p.r = 0.4 * u(rng);
      p.phi = 2.0 * M_PI * u(rng);
      break;
    default:
      p.name = "cat";
      p.alpha = CVec::Constant(1, random_point(rng, 1.0) + 0.2);
      break;
  }
  return make_state(p, 1);
}

}  // namespace

NetworkSpec random_network(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> w(0.8, 1.5);
  std::uniform_real_distribution<double> c(-0.12, 0.12);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec omega(N);
    for (int n = 0; n < N; ++n) omega[n] = w(rng);
    Mat J = Mat::Zero(N, N);
    Mat K = Mat::Zero(N, N);
    for (int n = 0; n < N; ++n) {
      for (int m = n + 1; m < N; ++m) {
        J(n, m) = J(m, n) = c(rng);
        K(n, m) = K(m, n) = c(rng);
      }
    }
    try {
      NetworkSpec spec(omega, J, K);
      const auto d = diagonalize(spec);
      const auto rep = check_assumptions(d);
      if (rep.min_abs_G >= 0.02 && (N == 1 || rep.min_gap >= 0.02)) return spec;
    } catch (const UnstableNetwork&) {
    }
  }
  throw InvalidArgument("could not draw a well-conditioned random network");
}

CheckResult check_invertibility_onset() {
  return timed("M invertibility onset", [](CheckResult& r) {
    const auto d = chain_decomposition(kFigChain);
    const Vec kappa = Vec::Constant(8, kFigKappa);
    double first = -1.0;
    double min_late = std::numeric_limits<double>::infinity();
    for (double t = 1.0; t <= 700.0; t += 1.0) {
      const double a = std::abs(build_M(d, t, kappa).det);
      if (first < 0.0 && a > 0.01) first = t;
      if (t >= 60.0) min_late = std::min(min_late, a);
    }
    r.pass = first >= 30.0 && first <= 70.0 && min_late > 0.01;
    r.detail = "first |det M| > 0.01 at t = " + fmt(first) + ", min over [60, 700] = " + fmt(min_late);
  });
}

CheckResult check_pulse_amplitude() {
  return timed("pulse amplitude", [](CheckResult& r) {
    const auto d = chain_decomposition(kFigChain);
    const Vec kappa = Vec::Constant(8, kFigKappa);
    const auto p = synthesize_profile(d, {CVec::Constant(8, -1.0), Basis::normal}, kFigTime, kappa);
    const double gm = g_max(p);
    r.pass = gm >= 0.068 && gm <= 0.092;
    r.detail = "g_max = " + fmt(gm);
  });
}

CheckResult check_damping() {
  return timed("decoherence damping", [](CheckResult& r) {
    const auto d = chain_decomposition(kFigChain);
    const auto deco = DecoherenceSpec::thermal_bath(d, kFigKappa, kFigT);
    const CVec eta = CVec::Constant(8, 2.0);
    const auto p = synthesize_profile(d, {-0.5 * eta, Basis::normal}, kFigTime, deco.kappa);
    const double damp = std::exp(-damping_factor(p, deco));
    r.pass = damp >= 0.18 && damp <= 0.26;
    r.detail = "e^-f = " + fmt(damp);
  });
}

CheckResult check_resolution_asymptote() {
  return timed("noise resolution asymptote", [](CheckResult& r) {
    const auto d = chain_decomposition(kFigChain);
    Vec g = d.G.cwiseAbs();
    std::sort(g.data(), g.data() + g.size());
    double worst = 0.0;
    for (double t = 400.0; t <= 4000.0; t *= 1.25) {
      const Vec s = resolution_spectrum(delta_beta_covariance(d, t, 1e-5));
      for (int k = 0; k < 8; ++k) {
        const double ref = g[k] * std::sqrt(1e-5 * t);
        worst = std::max(worst, std::abs(s[k] - ref) / ref);
      }
    }
    r.pass = worst <= 0.05;
    r.detail = "max relative deviation for t >= 400: " + fmt(worst);
  });
}

CheckResult check_validity_horizon() {
  return timed("validity horizon", [](CheckResult& r) {
    const auto d = chain_decomposition(kFigChain);
    const auto deco = DecoherenceSpec::thermal_bath(d, kFigKappa, kFigT);
    const double periods = validity_horizon(deco, kFigChain.network()) / (2.0 * M_PI);
    r.pass = periods >= 1e3 && periods <= 4e3;
    r.detail = "t_max = " + fmt(periods) + " periods";
  });
}

CheckResult check_round_trip(std::uint64_t seed) {
  return timed("round-trip synthesis", [seed](CheckResult& r) {
    std::mt19937_64 rng(derive_seed(seed, 6));
    std::uniform_int_distribution<int> size(1, 6);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int N = size(rng);
      const auto d = diagonalize(random_network(rng, N));
      const double t = select_interaction_time(d);
      CVec alpha(N);
      for (int n = 0; n < N; ++n) alpha[n] = random_point(rng, 2.0);
      const auto p = synthesize_profile(d, {alpha, Basis::local}, t);
      const CVec beta_target = local_normal_convert(d, alpha, Direction::local_to_normal);
      const CVec beta = beta_from_profile(p);
      worst = std::max(worst, (beta - beta_target).norm() / beta_target.norm());
    }
    r.pass = worst <= 1e-8;
    r.detail = "max relative error over 50 networks: " + fmt(worst);
  });
}

CheckResult check_schroedinger_oracle(std::uint64_t seed) {
  return timed("closed form vs Schroedinger oracle", [seed](CheckResult& r) {
    std::mt19937_64 rng(derive_seed(seed, 7));
    const NetworkSpec spec = NetworkSpec::uncoupled(Vec::Constant(1, 1.0));
    const auto d = diagonalize(spec);
    const double t = select_interaction_time(d);
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
      const TestState state = random_single_mode_state(rng, c);
      const CVec xi = CVec::Constant(1, random_point(rng, 1.5));
      const auto p = synthesize_profile(d, {-0.5 * xi, Basis::local}, t);
      const QubitExpectation q = brute_force_evolve(state.fock(25), p, spec, t);
      worst = std::max(worst, std::abs(q.signal() - state.chi(xi)));
    }
    r.pass = worst <= 1e-6;
    r.detail = "max |oracle - chi| over 20 cases: " + fmt(worst);
  });
}

CheckResult check_lindblad_oracle(std::uint64_t seed) {
  return timed("closed form vs Lindblad oracle", [seed](CheckResult& r) {
    std::mt19937_64 rng(derive_seed(seed, 8));
    const NetworkSpec spec = NetworkSpec::uncoupled(Vec::Constant(1, 1.0));
    const auto d = diagonalize(spec);
    const double t = select_interaction_time(d);
    double worst = 0.0;
    for (int c = 0; c < 10; ++c) {
      DecoherenceSpec deco = DecoherenceSpec::none(1);
      deco.kappa[0] = 0.01;
      deco.Nbar[0] = (c % 2 == 0) ? 0.0 : 0.5;
      deco.Gamma2 = ((c / 2) % 2 == 0) ? 0.0 : 0.005;
      const TestState state = random_single_mode_state(rng, c % 4);
      const CVec eta = CVec::Constant(1, random_point(rng, 1.2));
      const auto p = synthesize_profile(d, {-0.5 * eta, Basis::normal}, t, deco.kappa);
      const cplx closed = state.chi(eta_from_profile(p, deco)) * std::exp(-damping_factor(p, deco));
      const QubitExpectation q = brute_force_lindblad(state.fock(25), p, spec, deco, t);
      worst = std::max(worst, std::abs(q.signal() - closed));
    }
    r.pass = worst <= 1e-5;
    r.detail = "max |oracle - chi e^-f| over 10 cases: " + fmt(worst);
  });
}

CheckResult check_chain_closed_forms() {
  return timed("chain closed forms", [](CheckResult& r) {
    double spec_err = 0.0;
    double g_err = 0.0;
    double sympl = 0.0;
    for (int N = 2; N <= 10; ++N) {
      const ChainSpec cs(N, 1.0, 0.2);
      const auto exact = chain_decomposition(cs);
      const auto numeric = diagonalize(cs.network());
      spec_err = std::max(spec_err, (exact.nu - numeric.nu).cwiseAbs().maxCoeff());
      g_err = std::max(g_err, (exact.G - numeric.G).cwiseAbs().maxCoeff());
      const auto res = verify_symplectic(exact);
      sympl = std::max({sympl, res.normalization, res.symmetry});
    }
    r.pass = spec_err <= 1e-10 && sympl <= 1e-12 && g_err <= 1e-10;
    r.detail = "spectrum " + fmt(spec_err) + ", G " + fmt(g_err) + ", symplectic residual " + fmt(sympl);
  });
}

CheckResult check_noise_monte_carlo(std::uint64_t seed, int workers) {
  return timed("noise Monte-Carlo", [seed, workers](CheckResult& r) {
    Mat J = Mat::Zero(2, 2);
    Mat K = Mat::Zero(2, 2);
    J(0, 1) = J(1, 0) = 0.1;
    K(0, 1) = K(1, 0) = 0.05;
    Vec omega(2);
    omega << 1.0, 1.3;
    const auto d = diagonalize(NetworkSpec(omega, J, K));
    const double t = select_interaction_time(d);
    const double eps = 0.01 / t;
    MonteCarloOptions mo;
    mo.realizations = 10000;
    mo.seed = derive_seed(seed, 10);
    mo.workers = workers;
    const auto mc = monte_carlo_delta_beta(d, t, eps, mo);
    const Mat V = delta_beta_covariance(d, t, eps);
    double worst_z = 0.0;
    double worst_diag = 0.0;
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) worst_z = std::max(worst_z, std::abs(mc.cov(k, l) - V(k, l)) / mc.cov_stderr(k, l));
      worst_diag = std::max(worst_diag, std::abs(mc.cov(k, k) / (std::norm(d.G[k]) * eps * t) - 1.0));
    }
    r.pass = worst_z <= 5.0 && worst_diag <= 0.05;
    r.detail = "max |z| = " + fmt(worst_z) + ", max diagonal deviation " + fmt(worst_diag);
  });
}

CheckResult check_shot_reconstruction(std::uint64_t seed) {
  return timed("statistical reconstruction", [seed](CheckResult& r) {
    const std::string text = R"({
      "network": {"omega": [1.0]},
      "protocol": {"basis": "local", "grid": {"type": "line", "from": [0, 0], "to": [1.6, 0.8], "count": 9}},
      "state": {"name": "vacuum"},
      "shots": 10000,
      "seed": )" + std::to_string(derive_seed(seed, 11)) + "}";
    const auto config = parse_config(text);
    const auto ctx = prepare(config);
    const auto out = run_points(config, ctx);
    int covered = 0;
    for (const auto& rec : out.records) {
      const cplx truth = std::exp(-0.5 * rec.point.squaredNorm());
      if (std::abs(rec.chi_corrected - truth) <= 3.0 * rec.chi_err) ++covered;
    }
    r.pass = out.failures.empty() && out.records.size() == 9 && covered >= 8;
    r.detail = std::to_string(covered) + " of " + std::to_string(out.records.size()) + " points within 3 sigma";
  });
}

CheckResult check_temperature() {
  return timed("temperature recovery", [](CheckResult& r) {
    const auto d = chain_decomposition(kFigChain);
    const auto pts = star_grid(8, 0.03, 2, 8, false);
    StateParams thermal;
    thermal.name = "thermal";
    thermal.T = kFigT;
    const auto chi_th = normal_basis_chi(make_state(thermal, 8, &d), d);
    StateParams coh;
    coh.name = "coherent";
    coh.alpha = CVec::Constant(8, 0.5);
    const auto chi_coh = normal_basis_chi(make_state(coh, 8, &d), d);
    std::vector<ChiSample> th, co;
    for (const auto& p : pts) {
      th.push_back({p, chi_th(p), 0.0});
      co.push_back({p, chi_coh(p), 0.0});
    }
    const auto est = estimate_temperature(th, d.nu);
    const auto bad = estimate_temperature(co, d.nu);
    const double rel = std::abs(est.T / kFigT - 1.0);
    r.pass = rel <= 5e-3 && !est.not_thermal && bad.not_thermal;
    r.detail = "T = " + fmt(est.T) + " (rel. error " + fmt(rel) + "), coherent flagged: " +
               (bad.not_thermal ? "yes" : "no");
  });
}

CheckResult check_bochner() {
  return timed("Bochner diagnostic", [](CheckResult& r) {
    std::vector<std::pair<StateParams, int>> catalog;
    StateParams p;
    p.name = "vacuum";
    catalog.push_back({p, 1});
    p.name = "coherent";
    p.alpha = CVec::Constant(1, cplx{0.4, -0.3});
    catalog.push_back({p, 1});
    p = {};
    p.name = "thermal";
    p.nbar = Vec::Constant(1, 0.7);
    catalog.push_back({p, 1});
    p = {};
    p.name = "squeezed";
    p.r = 0.5;
    p.phi = 0.6;
    catalog.push_back({p, 1});
    p = {};
    p.name = "cat";
    p.alpha = CVec::Constant(1, cplx{1.2, 0.0});
    catalog.push_back({p, 1});
    p = {};
    p.name = "two_mode_squeezed";
    p.r = 0.4;
    catalog.push_back({p, 2});

    const std::vector<CVec> nodes1 = {CVec::Constant(1, 0.0), CVec::Constant(1, 0.5),
                                      CVec::Constant(1, cplx{0.0, 0.5}), CVec::Constant(1, -0.5),
                                      CVec::Constant(1, cplx{0.3, -0.4}), CVec::Constant(1, cplx{-0.2, 0.7})};
    std::vector<CVec> nodes2;
    for (const auto& [a, b] : std::vector<std::pair<cplx, cplx>>{
             {0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {cplx{0, 0.4}, -0.3}, {-0.3, cplx{0, 0.2}}, {0.3, 0.3}}) {
      CVec v(2);
      v << a, b;
      nodes2.push_back(v);
    }
    double worst = std::numeric_limits<double>::infinity();
    bool all_pass = true;
    bool forged_fails = true;
    for (const auto& [params, modes] : catalog) {
      const TestState s = make_state(params, modes);
      std::vector<ChiSample> samples;
      for (const auto& x : difference_set(modes == 1 ? nodes1 : nodes2)) samples.push_back({x, s.chi(x), 0.0});
      const auto res = bochner_check(samples);
      all_pass = all_pass && res.pass;
      worst = std::min(worst, res.min_eigenvalue);
      for (auto& smp : samples) {
        if (smp.point.norm() == 0.0) smp.value = 1.5;
      }
      forged_fails = forged_fails && !bochner_check(samples).pass;
    }
    r.pass = all_pass && forged_fails && worst >= -1e-10;
    r.detail = "catalog min eigenvalue " + fmt(worst) + ", forged chi(0) = 1.5 " +
               (forged_fails ? "rejected" : "accepted");
  });
}

std::vector<CheckResult> run_validation(const ValidationOptions& opts) {
  return {check_invertibility_onset(),
          check_pulse_amplitude(),
          check_damping(),
          check_resolution_asymptote(),
          check_validity_horizon(),
          check_round_trip(opts.seed),
          check_schroedinger_oracle(opts.seed),
          check_lindblad_oracle(opts.seed),
          check_chain_closed_forms(),
          check_noise_monte_carlo(opts.seed, opts.workers),
          check_shot_reconstruction(opts.seed),
          check_temperature(),
          check_bochner()};
}

}  // namespace oscnet
