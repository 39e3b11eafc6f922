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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oscnet/config.hpp"
#include "oscnet/protocol.hpp"

namespace oscnet {

/// Everything derived from a config before any point is processed.
struct RunContext {
  NormalModeDecomposition decomp;
  double t = 0.0;
  double t_min = 0.0;
  std::optional<DecoherenceSpec> deco;
  TestState state;
};

/// Diagonalizes, checks the assumptions and picks t. Throws IllConditioned
/// if an explicit t is below the minimal interaction time.
RunContext prepare(const ExperimentConfig& config);

struct PointFailure {
  std::size_t index = 0;
  std::string message;
};

struct RunOutcome {
  std::vector<MeasurementRecord> records;  // successful points, in point order
  std::vector<PointFailure> failures;
  std::vector<std::string> files;
  double t = 0.0;
  double wall_time = 0.0;
};

/// Synthesizes, damps, measures and corrects every protocol point. Points
/// run on config.workers threads; results are ordered by point index.
RunOutcome run_points(const ExperimentConfig& config, const RunContext& ctx);

/// run_points plus records.csv, the configured sweeps and manifest.json in
/// config.output. Failed points leave a marker row in records.csv.
RunOutcome run(const ExperimentConfig& config);

/// Rows (t, |det M|, cond M).
std::vector<std::array<double, 3>> det_sweep(const NormalModeDecomposition& decomp,
                                             const std::optional<Vec>& kappa, const DetSweep& sweep);

/// Rows (Re eta_mode, f, e^{-f}).
std::vector<std::array<double, 3>> damping_sweep(const NormalModeDecomposition& decomp,
                                                 const DecoherenceSpec& deco, double t,
                                                 const DampingSweep& sweep);

/// Rows t followed by sqrt(lambda_1..N) and the ascending |G_k| sqrt(eps t).
std::vector<std::vector<double>> resolution_sweep(const NormalModeDecomposition& decomp,
                                                  const ResolutionSweep& sweep);

/// Writes the four sweep files requested in config.sweeps into dir; returns their names.
std::vector<std::string> write_sweeps(const ExperimentConfig& config, const RunContext& ctx,
                                      const std::string& dir);

/// Manifest JSON: config, config hash, seed, version, wall time, outputs.
std::string manifest_json(const ExperimentConfig& config, const RunOutcome& outcome,
                          const std::string& command);

const char* version_string();

}  // namespace oscnet
