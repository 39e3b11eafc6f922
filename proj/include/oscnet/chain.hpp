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

#include <vector>

#include "oscnet/network.hpp"

namespace oscnet {

/// Uniform nearest-neighbour chain: omega_n = omega and
/// J_{n,n+1} = K_{n,n+1} = J, probed at the first site.
struct ChainSpec {
  int N = 1;
  double omega = 1.0;
  double J = 0.0;

  ChainSpec() = default;
  /// Throws UnstableChain unless omega + 2 eps_k > 0 for every k.
  ChainSpec(int N_, double omega_, double J_);

  NetworkSpec network() const;
};

// Closed forms below are indexed by the chain wavenumber k = 1..N (stored at
// position k-1), i.e. in the order of decreasing frequency for J > 0.

/// eps_k = 2 J cos(pi k / (N+1)).
Vec chain_epsilon(const ChainSpec& cs);

/// nu_k = sqrt(omega (omega + 2 eps_k)).
Vec chain_spectrum(const ChainSpec& cs);

/// r_k = artanh(eps_k / (omega + eps_k + nu_k)).
Vec chain_squeezing(const ChainSpec& cs);

/// G_k = sqrt(2/(N+1)) e^{-r_k} sin(pi k/(N+1)).
Vec chain_G(const ChainSpec& cs);

/// Wavenumber order that sorts chain_spectrum ascending.
std::vector<int> chain_order(const ChainSpec& cs);

/// Analytic decomposition with rows sorted by ascending frequency:
///   (S1)_kn =  sqrt(2/(N+1)) cosh(r_k) sin(pi k n/(N+1))
///   (S2)_kn =  sqrt(2/(N+1)) sinh(r_k) sin(pi k n/(N+1))
NormalModeDecomposition chain_decomposition(const ChainSpec& cs);

}  // namespace oscnet
