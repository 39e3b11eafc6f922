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

#include "oscnet/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "oscnet/io.hpp"

#ifndef OSCNET_VERSION
#define OSCNET_VERSION "0.0.0"
#endif
#ifndef OSCNET_GIT_REVISION
#define OSCNET_GIT_REVISION "unknown"
#endif

namespace oscnet {

namespace {

std::optional<Vec> kappa_of(const RunContext& ctx) {
  if (ctx.deco) return ctx.deco->kappa;
  return std::nullopt;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

template <typename Row>
void write_rows(std::ostream& os, const std::string& header, const std::vector<Row>& rows) {
  os << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

}  // namespace

const char* version_string() { return "oscnet " OSCNET_VERSION " (" OSCNET_GIT_REVISION ")"; }

RunContext prepare(const ExperimentConfig& config) {
  RunContext ctx;
  const auto& net = config.network;
  ctx.decomp = (net.chain && net.probe == 0) ? chain_decomposition(*net.chain)
                                             : diagonalize(net.spec, net.probe);
  const auto report = check_assumptions(ctx.decomp);
  if (!report.ok()) {
    std::ostringstream os;
    os << "network violates";
    if (!report.a1) os << " A1 (modes without probe coupling:";
    for (int k : report.weak_modes) os << ' ' << k;
    if (!report.a1) os << ')';
    if (!report.a2) os << " A2 (degenerate spectrum, min gap " << report.min_gap << ')';
    throw AssumptionViolation(os.str());
  }
  ctx.t_min = min_interaction_time(ctx.decomp);
  if (config.protocol.t) {
    ctx.t = *config.protocol.t;
    if (ctx.t < ctx.t_min) {
      throw IllConditioned("interaction time " + format_double(ctx.t) +
                           " is below the minimal interaction time " + format_double(ctx.t_min));
    }
  } else {
    ctx.t = config.protocol.t_factor * ctx.t_min;
  }
  if (config.decoherence) ctx.deco = config.decoherence->resolve(ctx.decomp);
  ctx.state = make_state(config.state, config.modes(), &ctx.decomp);
  return ctx;
}

RunOutcome run_points(const ExperimentConfig& config, const RunContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const auto points = protocol_points(config);
  const Basis basis = config.protocol.basis;
  const auto kappa = kappa_of(ctx);
  const ChiFunction chi = basis == Basis::local ? ctx.state.chi : normal_basis_chi(ctx.state, ctx.decomp);
  SynthesisOptions sopts;
  sopts.max_cond = config.protocol.max_cond;
  const std::uint64_t seed = config.seed.value_or(0);

  std::vector<std::optional<MeasurementRecord>> slots(points.size());
  std::vector<std::string> errors(points.size());
  auto process = [&](std::size_t i) {
    const CVec& p = points[i];
    try {
      const CouplingProfile profile =
          synthesize_profile(ctx.decomp, {-0.5 * p, basis}, ctx.t, kappa, sopts);
      const double f = ctx.deco ? damping_factor(profile, *ctx.deco) : 0.0;
      const QubitExpectation truth = ideal_measurement(std::exp(-f) * chi(p));
      MeasurementRecord rec = config.shots > 0 ? sample_shots(truth, config.shots, derive_seed(seed, i))
                                               : exact_record(truth);
      rec = correct_signal(rec, f);
      rec.point = p;
      rec.basis = basis;
      slots[i] = rec;
    } catch (const Error& e) {
      errors[i] = std::string(e.kind()) + ": " + e.what();
    } catch (const std::exception& e) {
      errors[i] = std::string("Error: ") + e.what();
    }
  };

  const auto workers = static_cast<std::size_t>(std::max(1, config.workers));
  if (workers == 1 || points.size() < 2) {
    for (std::size_t i = 0; i < points.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, points.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) process(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  RunOutcome out;
  out.t = ctx.t;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (slots[i]) {
      out.records.push_back(*slots[i]);
    } else {
      out.failures.push_back({i, errors[i]});
    }
  }
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<std::array<double, 3>> det_sweep(const NormalModeDecomposition& decomp,
                                             const std::optional<Vec>& kappa, const DetSweep& sweep) {
  std::vector<std::array<double, 3>> rows;
  const auto steps = static_cast<long>(std::floor((sweep.t_max - sweep.t_min) / sweep.step + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    const double t = sweep.t_min + static_cast<double>(i) * sweep.step;
    const MMatrix M = build_M(decomp, t, kappa);
    rows.push_back({t, std::abs(M.det), M.cond});
  }
  return rows;
}

std::vector<std::array<double, 3>> damping_sweep(const NormalModeDecomposition& decomp,
                                                 const DecoherenceSpec& deco, double t,
                                                 const DampingSweep& sweep) {
  std::vector<std::array<double, 3>> rows;
  for (int i = 0; i < sweep.count; ++i) {
    const double u = sweep.count == 1 ? 0.0 : static_cast<double>(i) / (sweep.count - 1);
    const double re = sweep.re_from + u * (sweep.re_to - sweep.re_from);
    CVec eta = sweep.eta;
    eta[sweep.mode] = re;
    const auto profile = synthesize_profile(decomp, {-0.5 * eta, Basis::normal}, t, deco.kappa);
    const double f = damping_factor(profile, deco);
    rows.push_back({re, f, std::exp(-f)});
  }
  return rows;
}

std::vector<std::vector<double>> resolution_sweep(const NormalModeDecomposition& decomp,
                                                  const ResolutionSweep& sweep) {
  std::vector<std::vector<double>> rows;
  Vec g = decomp.G.cwiseAbs();
  std::sort(g.data(), g.data() + g.size());
  for (int i = 0; i < sweep.count; ++i) {
    const double u = sweep.count == 1 ? 0.0 : static_cast<double>(i) / (sweep.count - 1);
    const double t = sweep.t_min * std::pow(sweep.t_max / sweep.t_min, u);
    const Vec s = resolution_spectrum(delta_beta_covariance(decomp, t, sweep.epsilon));
    std::vector<double> row{t};
    row.insert(row.end(), s.data(), s.data() + s.size());
    for (Eigen::Index k = 0; k < g.size(); ++k) row.push_back(g[k] * std::sqrt(sweep.epsilon * t));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> write_sweeps(const ExperimentConfig& config, const RunContext& ctx,
                                      const std::string& dir) {
  std::vector<std::string> files;
  if (!config.sweeps) return files;
  const auto& sw = *config.sweeps;
  const auto kappa = kappa_of(ctx);
  const int n = ctx.decomp.modes();
  if (sw.det) {
    auto out = open_output(dir + "/det_sweep.csv");
    write_rows(out, "t,abs_det,cond", det_sweep(ctx.decomp, kappa, *sw.det));
    files.push_back("det_sweep.csv");
  }
  if (sw.pulse) {
    const double t = sw.pulse->t.value_or(ctx.t);
    const auto profile = synthesize_profile(ctx.decomp, {sw.pulse->target, sw.pulse->basis}, t, kappa);
    auto out = open_output(dir + "/pulse_profile.csv");
    write_profile_csv(out, profile, config.protocol.samples_per_period);
    auto summary = open_output(dir + "/pulse_summary.csv");
    const std::vector<std::array<double, 3>> row{
        {t, g_max(profile, config.protocol.samples_per_period), g_rms(profile)}};
    write_rows(summary, "t,g_max,g_rms", row);
    files.push_back("pulse_profile.csv");
    files.push_back("pulse_summary.csv");
  }
  if (sw.damping) {
    if (!ctx.deco) throw ConfigError("'sweeps.damping' requires a 'decoherence' section");
    const double t = sw.damping->t.value_or(ctx.t);
    auto out = open_output(dir + "/damping_sweep.csv");
    write_rows(out, "re_eta,f,exp_minus_f", damping_sweep(ctx.decomp, *ctx.deco, t, *sw.damping));
    files.push_back("damping_sweep.csv");
  }
  if (sw.resolution) {
    std::string header = "t";
    for (int k = 1; k <= n; ++k) header += ",sqrt_lambda_" + std::to_string(k);
    for (int k = 1; k <= n; ++k) header += ",asymptote_" + std::to_string(k);
    auto out = open_output(dir + "/resolution_sweep.csv");
    write_rows(out, header, resolution_sweep(ctx.decomp, *sw.resolution));
    files.push_back("resolution_sweep.csv");
  }
  return files;
}

std::string manifest_json(const ExperimentConfig& config, const RunOutcome& outcome,
                          const std::string& command) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["version"] = version_string();
  m["config_hash"] = "fnv1a64:" + fnv1a_hex(config.canonical);
  if (config.seed) {
    m["seed"] = *config.seed;
  } else {
    m["seed"] = nullptr;
  }
  m["interaction_time"] = outcome.t;
  m["points"] = outcome.records.size() + outcome.failures.size();
  m["failures"] = outcome.failures.size();
  m["outputs"] = outcome.files;
  m["wall_time_s"] = outcome.wall_time;
  m["config"] = nlohmann::ordered_json::parse(config.canonical);
  return m.dump(2) + "\n";
}

RunOutcome run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const RunContext ctx = prepare(config);
  std::filesystem::create_directories(config.output);
  RunOutcome out = run_points(config, ctx);

  {
    auto csv = open_output(config.output + "/records.csv");
    write_records_header(csv, config.modes());
    std::size_t r = 0;
    std::size_t f = 0;
    const std::size_t total = out.records.size() + out.failures.size();
    for (std::size_t i = 0; i < total; ++i) {
      if (f < out.failures.size() && out.failures[f].index == i) {
        write_failure_row(csv, i, out.failures[f++].message);
      } else {
        write_record_row(csv, out.records[r++]);
      }
    }
  }
  out.files.push_back("records.csv");
  const auto sweeps = write_sweeps(config, ctx, config.output);
  out.files.insert(out.files.end(), sweeps.begin(), sweeps.end());
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto manifest = open_output(config.output + "/manifest.json");
  manifest << manifest_json(config, out, "simulate");
  return out;
}

}  // namespace oscnet
