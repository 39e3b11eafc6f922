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

#include "oscnet/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace oscnet {

ChainSpec::ChainSpec(int N_, double omega_, double J_) : N(N_), omega(omega_), J(J_) {
  if (N < 1) throw InvalidArgument("chain needs at least one site");
  if (!(omega > 0.0)) throw InvalidArgument("chain frequency must be positive");
  const Vec eps = chain_epsilon(*this);
  for (int k = 0; k < N; ++k) {
    if (!(omega + 2.0 * eps[k] > 0.0)) {
      std::ostringstream os;
      os << "chain mode k=" << k + 1 << " has omega + 2 eps_k = " << omega + 2.0 * eps[k]
         << " <= 0";
      throw UnstableChain(os.str());
    }
  }
}

NetworkSpec ChainSpec::network() const {
  Mat hop = Mat::Zero(N, N);
  for (int n = 0; n + 1 < N; ++n) hop(n, n + 1) = hop(n + 1, n) = J;
  return NetworkSpec(Vec::Constant(N, omega), hop, hop);
}

Vec chain_epsilon(const ChainSpec& cs) {
  Vec eps(cs.N);
  for (int k = 1; k <= cs.N; ++k) {
    eps[k - 1] = 2.0 * cs.J * std::cos(std::numbers::pi * k / (cs.N + 1));
  }
  // cos(pi/2) is not exactly zero in floating point.
  if (cs.N % 2 == 1) eps[(cs.N - 1) / 2] = 0.0;
  return eps;
}

Vec chain_spectrum(const ChainSpec& cs) {
  const Vec eps = chain_epsilon(cs);
  return (cs.omega * (cs.omega + 2.0 * eps.array())).sqrt();
}

Vec chain_squeezing(const ChainSpec& cs) {
  const Vec eps = chain_epsilon(cs);
  const Vec nu = chain_spectrum(cs);
  return (eps.array() / (cs.omega + eps.array() + nu.array())).atanh();
}

Vec chain_G(const ChainSpec& cs) {
  const Vec r = chain_squeezing(cs);
  const double norm = std::sqrt(2.0 / (cs.N + 1));
  Vec G(cs.N);
  for (int k = 1; k <= cs.N; ++k) {
    G[k - 1] = norm * std::exp(-r[k - 1]) * std::sin(std::numbers::pi * k / (cs.N + 1));
  }
  return G;
}

std::vector<int> chain_order(const ChainSpec& cs) {
  const Vec nu = chain_spectrum(cs);
  std::vector<int> order(cs.N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return nu[a] < nu[b]; });
  return order;
}

NormalModeDecomposition chain_decomposition(const ChainSpec& cs) {
  const int N = cs.N;
  const Vec nu = chain_spectrum(cs);
  const Vec r = chain_squeezing(cs);
  const std::vector<int> order = chain_order(cs);
  const double norm = std::sqrt(2.0 / (N + 1));

  NormalModeDecomposition d;
  d.probe = 0;
  d.nu.resize(N);
  d.S1.resize(N, N);
  d.S2.resize(N, N);
  for (int row = 0; row < N; ++row) {
    const int k = order[row] + 1;
    d.nu[row] = nu[k - 1];
    for (int n = 1; n <= N; ++n) {
      const long kn = static_cast<long>(k) * n;
      const double s = kn % (N + 1) == 0 ? 0.0 : std::sin(std::numbers::pi * kn / (N + 1));
      d.S1(row, n - 1) = norm * std::cosh(r[k - 1]) * s;
      d.S2(row, n - 1) = norm * std::sinh(r[k - 1]) * s;
    }
  }
  d.G = probe_couplings(d.S1, d.S2, d.probe);
  return d;
}

}  // namespace oscnet
