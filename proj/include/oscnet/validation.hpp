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
#include <random>
#include <string>
#include <vector>

#include "oscnet/network.hpp"

// Oracle and reproduction suites behind the `validate` subcommand.
namespace oscnet {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  int workers = 1;
};

/// Random stable network with N modes that satisfies A1 and A2 with margin:
/// omega in [0.8, 1.5], |J|, |K| <= 0.12, min |G_k| >= 0.02, min gap >= 0.02.
NetworkSpec random_network(std::mt19937_64& rng, int N);

CheckResult check_invertibility_onset();
CheckResult check_pulse_amplitude();
CheckResult check_damping();
CheckResult check_resolution_asymptote();
CheckResult check_validity_horizon();
CheckResult check_round_trip(std::uint64_t seed);
CheckResult check_schroedinger_oracle(std::uint64_t seed);
CheckResult check_lindblad_oracle(std::uint64_t seed);
CheckResult check_chain_closed_forms();
CheckResult check_noise_monte_carlo(std::uint64_t seed, int workers);
CheckResult check_shot_reconstruction(std::uint64_t seed);
CheckResult check_temperature();
CheckResult check_bochner();

/// All suites above, in that order.
std::vector<CheckResult> run_validation(const ValidationOptions& opts = {});

}  // namespace oscnet
