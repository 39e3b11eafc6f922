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

// Command-line front end: diagonalize, synthesize, simulate, reconstruct,
// noise-scan and validate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "oscnet/analysis.hpp"
#include "oscnet/chain.hpp"
#include "oscnet/config.hpp"
#include "oscnet/io.hpp"
#include "oscnet/noise.hpp"
#include "oscnet/pipeline.hpp"
#include "oscnet/validation.hpp"

namespace {

using namespace oscnet;
using json = nlohmann::ordered_json;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool exact = false;
  std::string chain;
  std::optional<int> spp;
  std::string records;
};

ExperimentConfig load(const Flags& f) {
  ExperimentConfig c = f.config.empty() ? parse_config(default_config_json()) : load_config(f.config);
  if (!f.chain.empty()) set_chain(c, parse_chain_flag(f.chain));
  if (f.seed) set_seed(c, *f.seed);
  if (f.exact) set_exact(c);
  if (!f.out.empty()) set_output(c, f.out);
  if (f.spp) set_samples_per_period(c, *f.spp);
  return c;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream os(dir + "/" + name, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + dir + "/" + name + "'");
  return os;
}

void write_manifest(const ExperimentConfig& c, RunOutcome outcome, const std::string& command) {
  auto os = open_out(c.output, "manifest.json");
  os << manifest_json(c, outcome, command);
}

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

int cmd_diagonalize(const Flags& f) {
  const auto c = load(f);
  const auto& net = c.network;
  const auto d = diagonalize(net.spec, net.probe);
  const auto rep = check_assumptions(d);
  std::cout << "# normal modes (probe " << net.probe << ")\n";
  std::cout << "k,nu,G_re,G_im,abs_G\n";
  for (int k = 0; k < d.modes(); ++k) {
    std::cout << k << ',' << g(d.nu[k]) << ',' << g(d.G[k].real()) << ',' << g(d.G[k].imag()) << ','
              << g(std::abs(d.G[k])) << '\n';
  }
  const auto res = verify_symplectic(d);
  std::cout << "# symplectic residuals: normalization " << g(res.normalization) << ", symmetry "
            << g(res.symmetry) << '\n';
  std::cout << "# A1 (all G_k nonzero): " << (rep.a1 ? "ok" : "VIOLATED") << ", min |G| = " << g(rep.min_abs_G)
            << '\n';
  std::cout << "# A2 (non-degenerate spectrum): " << (rep.a2 ? "ok" : "VIOLATED")
            << ", min gap = " << g(rep.min_gap) << (rep.near_degenerate ? " (near degenerate)" : "") << '\n';
  if (rep.a2) std::cout << "# minimal interaction time: " << g(min_interaction_time(d)) << '\n';
  if (net.chain && net.probe == 0) {
    const auto exact = chain_decomposition(*net.chain);
    std::cout << "# chain closed forms: max |nu - nu_chain| = " << g((exact.nu - d.nu).cwiseAbs().maxCoeff())
              << ", max |G - G_chain| = " << g((exact.G - d.G).cwiseAbs().maxCoeff()) << '\n';
  }
  if (!f.out.empty()) {
    auto os = open_out(c.output, "modes.csv");
    os << "k,nu,G_re,G_im\n";
    for (int k = 0; k < d.modes(); ++k) {
      os << k << ',' << format_double(d.nu[k]) << ',' << format_double(d.G[k].real()) << ','
         << format_double(d.G[k].imag()) << '\n';
    }
    RunOutcome o;
    o.files = {"modes.csv"};
    write_manifest(c, o, "diagonalize");
  }
  return rep.ok() ? 0 : 1;
}

int cmd_synthesize(const Flags& f) {
  const auto c = load(f);
  const auto ctx = prepare(c);
  const auto points = protocol_points(c);
  std::optional<Vec> kappa;
  if (ctx.deco) kappa = ctx.deco->kappa;
  SynthesisOptions so;
  so.max_cond = c.protocol.max_cond;
  const int spp = c.protocol.samples_per_period;

  std::filesystem::create_directories(c.output);
  auto coeff = open_out(c.output, "coefficients.csv");
  auto summary = open_out(c.output, "profiles.csv");
  coeff << "point,l,nu,B_re,B_im\n";
  summary << "point,t,g_max,g_rms\n";
  RunOutcome o;
  o.t = ctx.t;
  std::cout << "# t = " << g(ctx.t) << " (minimal " << g(ctx.t_min) << ")\n";
  std::cout << "point,g_max,g_rms\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = synthesize_profile(ctx.decomp, {-0.5 * points[i], c.protocol.basis}, ctx.t, kappa, so);
    for (int l = 0; l < p.modes(); ++l) {
      coeff << i << ',' << l << ',' << format_double(ctx.decomp.nu[l]) << ',' << format_double(p.B[l].real())
            << ',' << format_double(p.B[l].imag()) << '\n';
    }
    const double gm = g_max(p, spp);
    const double gr = g_rms(p);
    summary << i << ',' << format_double(ctx.t) << ',' << format_double(gm) << ',' << format_double(gr) << '\n';
    std::cout << i << ',' << g(gm) << ',' << g(gr) << '\n';
    const std::string name = "profile_" + std::to_string(i) + ".csv";
    auto prof = open_out(c.output, name);
    write_profile_csv(prof, p, spp);
    o.files.push_back(name);
  }
  o.files.insert(o.files.begin(), {"coefficients.csv", "profiles.csv"});
  write_manifest(c, o, "synthesize");
  return 0;
}

int cmd_simulate(const Flags& f) {
  const auto c = load(f);
  const auto out = run(c);
  std::cout << "# t = " << g(out.t) << ", " << out.records.size() << " points written to " << c.output
            << "/records.csv\n";
  for (const auto& fail : out.failures) {
    std::cerr << "error: point=" << fail.index << " " << fail.message << '\n';
  }
  return out.failures.empty() ? 0 : 1;
}

int cmd_reconstruct(const Flags& f) {
  auto c = load(f);
  std::vector<MeasurementRecord> records;
  RunOutcome o;
  if (!f.records.empty()) {
    std::ifstream in(f.records);
    if (!in) throw ConfigError("cannot open records '" + f.records + "'");
    records = read_records_csv(in);
  } else {
    o = run(c);
    records = o.records;
    if (!o.failures.empty()) {
      for (const auto& fail : o.failures) std::cerr << "error: point=" << fail.index << " " << fail.message << '\n';
      return 1;
    }
  }
  if (records.empty()) throw ConfigError("no records to analyze");
  const auto samples = samples_from_records(records);
  const int modes = static_cast<int>(samples.front().point.size());
  json report;
  report["records"] = records.size();

  bool fitted = false;
  for (int order : {2, 1}) {
    try {
      const auto fit = fit_moments(samples, order);
      json m;
      m["order"] = order;
      m["used_samples"] = fit.used_samples;
      json mean = json::array();
      for (int j = 0; j < modes; ++j) {
        mean.push_back({{"re", fit.mean[j].real()}, {"im", fit.mean[j].imag()}, {"stderr", fit.mean_stderr[j]}});
      }
      m["mean"] = mean;
      if (order == 2) {
        json num = json::array();
        for (int j = 0; j < modes; ++j) {
          for (int k = 0; k < modes; ++k) {
            num.push_back({{"j", j}, {"k", k}, {"re", fit.number(j, k).real()}, {"im", fit.number(j, k).imag()},
                           {"stderr", fit.number_stderr(j, k)}});
          }
        }
        m["number"] = num;
      }
      report["moments"] = m;
      std::cout << "# moments (order " << order << ", " << fit.used_samples << " samples)\n";
      for (int j = 0; j < modes; ++j) {
        std::cout << "<a_" << j << "> = " << g(fit.mean[j].real()) << " + " << g(fit.mean[j].imag())
                  << "i  +- " << g(fit.mean_stderr[j]) << '\n';
      }
      if (order == 2) {
        for (int j = 0; j < modes; ++j) {
          std::cout << "<a_" << j << "^+ a_" << j << "> = " << g(fit.number(j, j).real()) << "  +- "
                    << g(fit.number_stderr(j, j)) << '\n';
        }
      }
      fitted = true;
      break;
    } catch (const Error& e) {
      report["moments_error_order_" + std::to_string(order)] = std::string(e.what());
    }
  }
  if (!fitted) std::cout << "# moments: not enough samples near the origin\n";

  try {
    const auto b = bochner_check(samples);
    report["bochner"] = {{"min_eigenvalue", b.min_eigenvalue}, {"tol", b.tol}, {"pass", b.pass},
                         {"normalized", b.normalized}, {"imputed_origin", b.imputed_origin},
                         {"nodes", b.used.size()}};
    std::cout << "# Bochner: min eigenvalue " << g(b.min_eigenvalue) << " on " << b.used.size() << " nodes, "
              << (b.pass ? "pass" : "FAIL") << '\n';
  } catch (const InsufficientClosure& e) {
    report["bochner"] = {{"error", e.what()}};
    std::cout << "# Bochner: " << e.what() << '\n';
  }

  if (records.front().basis == Basis::normal) {
    const auto ctx = prepare(c);
    if (ctx.decomp.modes() == modes) {
      const auto est = estimate_temperature(samples, ctx.decomp.nu);
      report["temperature"] = {{"T", est.T}, {"residual", est.residual}, {"threshold", est.threshold},
                               {"dof", est.dof}, {"not_thermal", est.not_thermal},
                               {"at_lower_bound", est.at_lower_bound}};
      std::cout << "# thermal fit: T = " << g(est.T) << ", statistic " << g(est.residual) << " (99% threshold "
                << g(est.threshold) << ")" << (est.not_thermal ? " NotThermal" : "") << '\n';
    }
  }
  auto os = open_out(c.output, "analysis.json");
  os << report.dump(2) << '\n';
  o.files.push_back("analysis.json");
  write_manifest(c, o, "reconstruct");
  return 0;
}

int cmd_noise_scan(const Flags& f) {
  const auto c = load(f);
  const auto ctx = prepare(c);
  const NoiseConfig noise = c.noise.value_or(NoiseConfig{1e-5, 0, 0.0, {}});
  std::vector<double> times = noise.times;
  if (times.empty()) {
    for (int i = 0; i < 50; ++i) times.push_back(ctx.t_min * std::pow(100.0, i / 49.0));
  }
  const int n = ctx.decomp.modes();
  RunOutcome o;
  o.t = ctx.t;
  {
    auto os = open_out(c.output, "noise_scan.csv");
    os << "t";
    for (int k = 1; k <= n; ++k) os << ",sqrt_lambda_" << k;
    for (int k = 1; k <= n; ++k) os << ",abs_G_sqrt_eps_t_" << k;
    os << '\n';
    for (double t : times) {
      const Vec s = resolution_spectrum(delta_beta_covariance(ctx.decomp, t, noise.epsilon));
      os << format_double(t);
      for (int k = 0; k < n; ++k) os << ',' << format_double(s[k]);
      for (int k = 0; k < n; ++k) os << ',' << format_double(std::abs(ctx.decomp.G[k]) * std::sqrt(noise.epsilon * t));
      os << '\n';
    }
    o.files.push_back("noise_scan.csv");
  }
  int status = 0;
  if (noise.realizations > 0) {
    MonteCarloOptions mo;
    mo.realizations = noise.realizations;
    mo.dt = noise.dt;
    mo.seed = *c.seed;
    mo.workers = c.workers;
    const auto mc = monte_carlo_delta_beta(ctx.decomp, ctx.t, noise.epsilon, mo);
    const Mat V = delta_beta_covariance(ctx.decomp, ctx.t, noise.epsilon);
    auto os = open_out(c.output, "noise_mc.csv");
    os << "k,l,closed_form,monte_carlo,stderr,z\n";
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const double z = mc.cov_stderr(k, l) > 0.0 ? (mc.cov(k, l) - V(k, l)) / mc.cov_stderr(k, l) : 0.0;
        worst = std::max(worst, std::abs(z));
        os << k << ',' << l << ',' << format_double(V(k, l)) << ',' << format_double(mc.cov(k, l)) << ','
           << format_double(mc.cov_stderr(k, l)) << ',' << format_double(z) << '\n';
      }
    }
    o.files.push_back("noise_mc.csv");
    std::cout << "# Monte-Carlo at t = " << g(ctx.t) << ": max |z| = " << g(worst) << '\n';
    if (worst > 5.0) status = 1;
  }
  std::cout << "# resolution spectrum written for " << times.size() << " times to " << c.output << "/noise_scan.csv\n";
  write_manifest(c, o, "noise-scan");
  return status;
}

int cmd_validate(const Flags& f) {
  const auto c = load(f);
  ValidationOptions vo;
  vo.seed = c.seed.value_or(1);
  vo.workers = c.workers;
  const auto results = run_validation(vo);
  bool ok = true;
  std::printf("%-38s %-6s %9s  %s\n", "suite", "result", "seconds", "detail");
  for (const auto& r : results) {
    std::printf("%-38s %-6s %9.2f  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillator-network state reconstruction through a single probe qubit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "Experiment configuration (JSON)")->check(CLI::ExistingFile);
  app.add_option("--seed", f.seed, "Master seed");
  app.add_option("--out", f.out, "Output directory");
  app.add_flag("--exact", f.exact, "Skip shot sampling (exact expectation values)");
  app.add_option("--chain", f.chain, "Uniform chain N,omega,J instead of the configured network");
  app.add_option("--samples-per-period", f.spp, "Waveform samples per fastest period")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", oscnet::version_string());

  auto* diag = app.add_subcommand("diagonalize", "Normal modes, probe couplings and assumption report");
  auto* synth = app.add_subcommand("synthesize", "Coupling profiles for the configured points");
  auto* sim = app.add_subcommand("simulate", "Run the measurement pipeline and write records.csv");
  auto* rec = app.add_subcommand("reconstruct", "Moments, thermal fit and Bochner check from records");
  rec->add_option("--records", f.records, "Existing records.csv (default: simulate first)")
      ->check(CLI::ExistingFile);
  auto* noise = app.add_subcommand("noise-scan", "Phase-space resolution under coupling noise");
  auto* val = app.add_subcommand("validate", "Run the oracle and reproduction suites");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*diag) return cmd_diagonalize(f);
    if (*synth) return cmd_synthesize(f);
    if (*sim) return cmd_simulate(f);
    if (*rec) return cmd_reconstruct(f);
    if (*noise) return cmd_noise_scan(f);
    if (*val) return cmd_validate(f);
  } catch (const oscnet::Error& e) {
    std::cerr << "error: kind=" << e.kind() << " message=" << json(std::string(e.what())).dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: kind=Error message=" << json(std::string(e.what())).dump() << '\n';
    return 2;
  }
  return 2;
}
