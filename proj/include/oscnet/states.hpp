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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oscnet/dynamics.hpp"
#include "oscnet/fock.hpp"

// Catalog of test states with exact characteristic functions.
namespace oscnet {

struct StateParams {
  std::string name = "vacuum";
  CVec alpha;        // coherent amplitudes, or the cat amplitude in alpha[0]
  Vec nbar;          // local thermal occupations
  double T = 0.0;    // network temperature; used when nbar is empty
  int mode = 0;
  int mode2 = 1;
  double r = 0.0;
  double phi = 0.0;
  int truncation = 40;  // Fock truncation for non-Gaussian states
};

struct TestState {
  std::string name;
  int modes = 0;
  ChiFunction chi;  // local basis
  std::optional<GaussianState> gaussian;
  /// Truncated Fock representation for the oracles; empty when N > 2 or
  /// the state has no finite-temperature Fock form here.
  std::function<FockEnsemble(int)> fock;
};

const std::vector<std::string>& catalog_names();

/// Throws InvalidArgument for unknown names or inconsistent parameters.
/// `decomp` is required for network-thermal states.
TestState make_state(const StateParams& params, int modes,
                     const NormalModeDecomposition* decomp = nullptr);

/// chi of the state at a normal-mode point eta, through xi = S1^+ eta - S2^T eta^*.
ChiFunction normal_basis_chi(const TestState& state, const NormalModeDecomposition& decomp);

}  // namespace oscnet
