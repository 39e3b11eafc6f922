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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oscnet/chain.hpp"
#include "oscnet/decoherence.hpp"
#include "oscnet/noise.hpp"
#include "oscnet/states.hpp"

namespace oscnet {

struct NetworkConfig {
  std::optional<ChainSpec> chain;
  NetworkSpec spec;
  int probe = 0;
};

struct GridConfig {
  std::string type = "star";  // star | line
  double spacing = 0.1;
  int rings = 3;
  int angles = 8;
  bool pairs = true;
  int mode = 0;  // line only
  cplx from;
  cplx to;
  int count = 9;
};

struct ProtocolConfig {
  std::optional<double> t;
  double t_factor = 2.0;
  Basis basis = Basis::local;
  std::vector<CVec> points;
  std::optional<GridConfig> grid;
  int samples_per_period = 20;
  double max_cond = 1e8;
};

struct DecoherenceConfig {
  Vec kappa;  // one entry broadcasts to every mode
  std::optional<double> T;
  Vec Nbar;
  double Gamma1 = 0.0;
  double Gamma2 = 0.0;
  double Nq = 0.0;

  DecoherenceSpec resolve(const NormalModeDecomposition& decomp) const;
};

struct NoiseConfig {
  double epsilon = 0.0;
  std::uint64_t realizations = 10000;
  double dt = 0.0;
  std::vector<double> times;
};

struct DetSweep {
  double t_min = 1.0;
  double t_max = 700.0;
  double step = 1.0;
};

struct PulseSweep {
  std::optional<double> t;
  CVec target;
  Basis basis = Basis::normal;
};

struct DampingSweep {
  std::optional<double> t;
  CVec eta;
  int mode = 0;
  double re_from = 0.0;
  double re_to = 3.0;
  int count = 31;
};

struct ResolutionSweep {
  double epsilon = 1e-5;
  double t_min = 10.0;
  double t_max = 1000.0;
  int count = 100;
};

struct SweepsConfig {
  std::optional<DetSweep> det;
  std::optional<PulseSweep> pulse;
  std::optional<DampingSweep> damping;
  std::optional<ResolutionSweep> resolution;
};

struct ExperimentConfig {
  NetworkConfig network;
  ProtocolConfig protocol;
  std::optional<DecoherenceConfig> decoherence;
  std::optional<NoiseConfig> noise;
  StateParams state;
  std::uint64_t shots = 0;  // 0 selects exact mode
  std::optional<std::uint64_t> seed;
  std::string output = "out";
  int workers = 1;
  std::optional<SweepsConfig> sweeps;
  std::string canonical;  // the parsed document, re-serialized

  int modes() const { return network.spec.modes(); }
};

/// Strict JSON parsing: unknown keys, wrong types and missing required
/// fields throw ConfigError naming the offending path.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Built-in configuration used when no --config is given.
const std::string& default_config_json();

/// "N,omega,J" shorthand for a chain.
ChainSpec parse_chain_flag(const std::string& text);

/// Replaces the network section by a chain and refreshes `canonical`.
void set_chain(ExperimentConfig& config, const ChainSpec& chain);
void set_seed(ExperimentConfig& config, std::uint64_t seed);
void set_exact(ExperimentConfig& config);
void set_output(ExperimentConfig& config, const std::string& dir);
void set_samples_per_period(ExperimentConfig& config, int spp);

/// Phase-space points requested by the protocol section (explicit points
/// first, then the grid).
std::vector<CVec> protocol_points(const ExperimentConfig& config);

/// FNV-1a 64-bit hash, hex encoded.
std::string fnv1a_hex(const std::string& data);

}  // namespace oscnet
