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

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "oscnet/chain.hpp"

namespace {

using namespace oscnet;

TEST(Chain, RejectsInvalidParameters) {
  EXPECT_THROW(ChainSpec(0, 1.0, 0.1), InvalidArgument);
  EXPECT_THROW(ChainSpec(3, -1.0, 0.1), InvalidArgument);
  EXPECT_THROW(ChainSpec(4, 1.0, 0.6), UnstableChain);
}

TEST(Chain, ThreeSiteSpectrum) {
  const Vec nu = chain_spectrum(ChainSpec(3, 1.0, 0.2));
  EXPECT_NEAR(nu[0], 1.25128, 1e-5);
  EXPECT_NEAR(nu[1], 1.0, 1e-15);
  EXPECT_NEAR(nu[2], 0.65903, 1e-5);
}

TEST(Chain, MiddleModeOfOddChainIsBare) {
  for (int N : {1, 3, 5, 9}) {
    const ChainSpec cs(N, 1.3, 0.15);
    EXPECT_NEAR(chain_epsilon(cs)[(N + 1) / 2 - 1], 0.0, 1e-15);
    EXPECT_NEAR(chain_spectrum(cs)[(N + 1) / 2 - 1], 1.3, 1e-15);
  }
}

TEST(Chain, DecoupledChain) {
  const ChainSpec cs(5, 1.0, 0.0);
  EXPECT_LT((chain_spectrum(cs).array() - 1.0).abs().maxCoeff(), 1e-15);
  EXPECT_EQ(chain_squeezing(cs).cwiseAbs().maxCoeff(), 0.0);
  const Vec G = chain_G(cs);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_NEAR(G[k - 1], std::sqrt(2.0 / 6.0) * std::sin(std::numbers::pi * k / 6.0), 1e-15);
  }
  const auto d = chain_decomposition(cs);
  EXPECT_EQ(d.S2.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LT((d.S1.adjoint() * d.S1 - CMat::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Chain, SingleSite) {
  const ChainSpec cs(1, 1.0, 0.3);
  EXPECT_NEAR(chain_spectrum(cs)[0], 1.0, 1e-15);
  EXPECT_NEAR(chain_G(cs)[0], 1.0, 1e-15);
}

TEST(Chain, ClosedFormsMatchOracleAndNumericDiagonalization) {
  for (double J : {0.05, 0.2}) {
    for (int N = 2; N <= 10; ++N) {
      const ChainSpec cs(N, 1.0, J);
      const auto closed = chain_decomposition(cs);
      const auto numeric = diagonalize(cs.network());
      const auto ref = oracle::uniform_chain_modes(N, 1.0, J);
      EXPECT_LT((closed.nu - numeric.nu).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((closed.nu - ref.nu).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((closed.G.cwiseAbs() - ref.absG).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((closed.S1.cwiseAbs() - numeric.S1.cwiseAbs()).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT((closed.S2.cwiseAbs() - numeric.S2.cwiseAbs()).cwiseAbs().maxCoeff(), 1e-9);
      // In the G >= 0 gauge the full matrices agree, not only their moduli.
      EXPECT_LT((closed.S1 - numeric.S1).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LT((closed.S2 - numeric.S2).cwiseAbs().maxCoeff(), 1e-9);
      const auto r = verify_symplectic(closed);
      EXPECT_LE(r.normalization, 1e-12);
      EXPECT_LE(r.symmetry, 1e-12);
      const auto [off, diag] = diagonal_form_residual(cs.network(), closed);
      EXPECT_LE(off, 1e-12);
      EXPECT_LE(diag, 1e-12);
    }
  }
}

TEST(Chain, CouplingsFollowFromTransformation) {
  const ChainSpec cs(8, 1.0, 0.2);
  const auto d = chain_decomposition(cs);
  const Vec G = chain_G(cs);
  const auto order = chain_order(cs);
  for (int k = 0; k < 8; ++k) {
    EXPECT_GT(d.G[k].real(), 0.0);
    EXPECT_NEAR(std::abs(d.G[k] - std::conj(d.S1(k, 0) - d.S2(k, 0))), 0.0, 1e-12);
    EXPECT_NEAR(d.G[k].real(), G[order[k]], 1e-15);
  }
}

TEST(Chain, SpectrumDecreasesWithWavenumber) {
  const Vec nu = chain_spectrum(ChainSpec(10, 1.0, 0.2));
  for (int k = 1; k < 10; ++k) EXPECT_LT(nu[k], nu[k - 1]);
  const auto order = chain_order(ChainSpec(10, 1.0, 0.2));
  EXPECT_EQ(order.front(), 9);
  EXPECT_EQ(order.back(), 0);
}

}  // namespace
