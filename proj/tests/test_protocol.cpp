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

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "oscnet/chain.hpp"
#include "oscnet/protocol.hpp"

namespace {

using namespace oscnet;
constexpr double kPi = std::numbers::pi;

NormalModeDecomposition free_oscillator() { return diagonalize(NetworkSpec::uncoupled(Vec::Ones(1))); }

NormalModeDecomposition random_decomposition(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> w(0.8, 1.5), c(-0.1, 0.1);
  for (;;) {
    Vec omega(N);
    Mat J = Mat::Zero(N, N), K = Mat::Zero(N, N);
    for (int i = 0; i < N; ++i) omega[i] = w(rng);
    for (int i = 0; i < N; ++i) {
      for (int j = i + 1; j < N; ++j) {
        J(i, j) = J(j, i) = c(rng);
        K(i, j) = K(j, i) = c(rng);
      }
    }
    const auto d = diagonalize(NetworkSpec(omega, J, K));
    const auto rep = check_assumptions(d);
    if (rep.min_abs_G > 0.02 && (N == 1 || rep.min_gap > 0.02)) return d;
  }
}

CVec quadrature_beta(const CouplingProfile& p, const Vec& kappa, double h = 0.005) {
  const long pairs = static_cast<long>(std::ceil(p.t / (2.0 * h)));
  CVec beta(p.modes());
  for (int k = 0; k < p.modes(); ++k) {
    const cplx integral = oracle::simpson<cplx>(
        [&](double s) {
          return evaluate_g(p, s) * std::exp(cplx{-0.5 * kappa[k], p.decomp.nu[k]} * s);
        },
        0.0, p.t, pairs);
    beta[k] = -oracle::I * std::conj(p.decomp.G[k]) * integral;
  }
  return beta;
}

TEST(MinInteractionTime, InverseGap) {
  NormalModeDecomposition d = free_oscillator();
  d.nu = Vec(2);
  d.nu << 1.0, 2.0;
  d.G = CVec::Ones(2);
  EXPECT_NEAR(min_interaction_time(d), kPi, 1e-15);
  d.nu << 1.0, 1.0 + 1e-9;
  EXPECT_THROW(min_interaction_time(d, 1e-8), DegenerateSpectrum);
}

TEST(MinInteractionTime, ChainIsBelowFigureOnset) {
  const auto d = chain_decomposition(ChainSpec(8, 1.0, 0.2));
  Vec nu = d.nu;
  double gap = 1e300;
  for (int k = 1; k < 8; ++k) gap = std::min(gap, nu[k] - nu[k - 1]);
  EXPECT_NEAR(min_interaction_time(d), kPi / gap, 1e-12);
  // Same order as the numerically observed invertibility onset near t = 50.
  EXPECT_GT(min_interaction_time(d), 30.0);
  EXPECT_LT(min_interaction_time(d), 70.0);
}

TEST(BuildM, IdentityForFreeOscillatorOnHalfPeriods) {
  const auto d = free_oscillator();
  for (int m = 1; m <= 4; ++m) {
    const auto M = build_M(d, m * kPi);
    EXPECT_LT((M.full() - CMat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(BuildM, EntriesMatchQuadrature) {
  std::mt19937_64 rng(21);
  const auto d = random_decomposition(rng, 3);
  const double t = 2.0 * min_interaction_time(d);
  const Vec kappa = Vec::Constant(3, 0.01);
  const auto M = build_M(d, t, kappa);
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      auto integral = [&](double w) {
        return oracle::simpson<cplx>([&](double s) { return std::exp(cplx{-0.005, -w} * s); }, 0.0, t, 20000);
      };
      const cplx m1 = d.G[k] / d.G[l] / t * integral(d.nu[k] - d.nu[l]);
      const cplx m2 = d.G[k] / std::conj(d.G[l]) / t * integral(d.nu[k] + d.nu[l]);
      EXPECT_LT(std::abs(M.M1(k, l) - m1), 1e-10);
      EXPECT_LT(std::abs(M.M2(k, l) - m2), 1e-10);
      EXPECT_EQ(M.M3(k, l), std::conj(M.M2(k, l)));
      EXPECT_EQ(M.M4(k, l), std::conj(M.M1(k, l)));
    }
  }
}

TEST(BuildM, ApproachesIdentityForLongTimes) {
  std::mt19937_64 rng(22);
  // Off-diagonal entries are bounded by (G_k/G_l) 2/(100 pi), so the bound
  // needs couplings of comparable size.
  for (int trial = 0; trial < 10;) {
    const auto d = random_decomposition(rng, 1 + trial % 5);
    if (d.G.cwiseAbs().maxCoeff() > 5.0 * d.G.cwiseAbs().minCoeff()) continue;
    ++trial;
    const auto M = build_M(d, 100.0 * min_interaction_time(d));
    EXPECT_LE((M.full() - CMat::Identity(2 * d.modes(), 2 * d.modes())).cwiseAbs().maxCoeff(), 0.05);
  }
}

TEST(BuildM, ChainDeterminantTendsToOne) {
  const auto d = chain_decomposition(ChainSpec(8, 1.0, 0.2));
  EXPECT_GT(std::abs(build_M(d, 60.0).det), 0.0);
  EXPECT_NEAR(std::abs(build_M(d, 1e6).det), 1.0, 1e-3);
}

TEST(BuildM, SmallKappaContinuity) {
  const auto d = chain_decomposition(ChainSpec(4, 1.0, 0.2));
  const auto a = build_M(d, 50.0);
  const auto b = build_M(d, 50.0, Vec::Constant(4, 1e-13));
  EXPECT_LT((a.full() - b.full()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(BuildM, RejectsUncoupledModes) {
  auto d = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  d.G[1] = 0.0;
  EXPECT_THROW(build_M(d, 100.0), AssumptionViolation);
  EXPECT_THROW(build_M(d, -1.0), InvalidArgument);
}

TEST(Synthesize, ZeroTargetGivesZeroProfile) {
  const auto d = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  const auto p = synthesize_profile(d, {CVec::Zero(3), Basis::normal}, 2.0 * min_interaction_time(d));
  EXPECT_EQ(p.B.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(evaluate_g(p, 1.234), 0.0);
  EXPECT_EQ(g_max(p), 0.0);
}

TEST(Synthesize, FreeOscillatorHalfDisplacement) {
  const auto d = free_oscillator();
  const auto p = synthesize_profile(d, {CVec::Constant(1, -0.5), Basis::normal}, 4.0 * kPi);
  EXPECT_LT(std::abs(beta_from_profile(p)[0] + 0.5), 1e-10);
  EXPECT_LT(std::abs(quadrature_beta(p, Vec::Zero(1))[0] + 0.5), 1e-8);
}

TEST(Synthesize, RoundTripOnRandomNetworks) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 1 + trial % 6;
    const auto d = random_decomposition(rng, N);
    const double t = select_interaction_time(d);
    CVec target(N);
    for (int k = 0; k < N; ++k) target[k] = std::polar(2.0 * u(rng), 2.0 * kPi * u(rng));
    const auto p = synthesize_profile(d, {target, Basis::normal}, t);
    EXPECT_LE((beta_from_profile(p) - target).norm(), 1e-8 * target.norm());
    if (N <= 3) EXPECT_LE((quadrature_beta(p, Vec::Zero(N)) - target).norm(), 1e-6 * target.norm());
  }
}

TEST(Synthesize, LocalTargetsAreConverted) {
  const auto d = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  CVec alpha(3);
  alpha << cplx{0.2, 0.1}, cplx{-0.3, 0.0}, cplx{0.0, 0.4};
  const auto p = synthesize_profile(d, {alpha, Basis::local}, select_interaction_time(d));
  const CVec beta = beta_from_profile(p);
  EXPECT_LT((local_normal_convert(d, beta, Direction::normal_to_local) - alpha).norm(), 1e-10);
}

TEST(Synthesize, KappaTargetsEta) {
  const auto d = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  const Vec kappa = Vec::Constant(3, 0.02);
  CVec target(3);
  target << cplx{-0.4, 0.1}, cplx{0.3, 0.3}, cplx{0.0, -0.2};
  const auto p = synthesize_profile(d, {target, Basis::normal}, select_interaction_time(d), kappa);
  // With damping the profile realizes eta = -2 beta_target.
  EXPECT_LT((beta_from_profile(p, kappa) + 2.0 * target).norm(), 1e-10);
  EXPECT_LT((quadrature_beta(p, kappa) - target).norm(), 1e-6);
}

TEST(Synthesize, IllConditionedBelowMinimumTime) {
  const auto d = chain_decomposition(ChainSpec(4, 1.0, 0.2));
  EXPECT_THROW(synthesize_profile(d, {CVec::Ones(4), Basis::normal}, 0.01), IllConditioned);
  EXPECT_THROW(synthesize_profile(d, {CVec::Ones(3), Basis::normal}, 100.0), InvalidArgument);
}

TEST(EvaluateG, SingleToneExample) {
  NormalModeDecomposition d = free_oscillator();
  CouplingProfile p;
  p.decomp = d;
  p.B = CVec::Constant(1, cplx{0.0, 0.5});
  p.t = 1.0;
  for (double s : {0.0, 0.4, 1.7}) {
    EXPECT_NEAR(evaluate_g(p, s), -std::cos(s), 1e-15);
    EXPECT_NEAR(std::abs(evaluate_g_complex(p, s) - evaluate_g(p, s)), 0.0, 1e-15);
  }
}

TEST(BetaFromWaveform, Properties) {
  const auto d = free_oscillator();
  EXPECT_EQ(beta_from_waveform([](double) { return 0.0; }, d, 3.0).norm(), 0.0);
  EXPECT_LT(beta_from_waveform([](double) { return 0.3; }, d, 2.0 * kPi).norm(), 1e-12);
  const auto chain = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  const auto p = synthesize_profile(chain, {CVec::Constant(3, cplx{0.1, -0.2}), Basis::normal},
                                    select_interaction_time(chain));
  const CVec wf = beta_from_waveform([&](double s) { return evaluate_g(p, s); }, chain, p.t);
  EXPECT_LT((wf - beta_from_profile(p)).norm(), 1e-9);
}

TEST(BetaFromProfile, LinearInCoefficients) {
  const auto d = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  CouplingProfile a{CVec::Random(3), 40.0, d, std::nullopt};
  CouplingProfile b{CVec::Random(3), 40.0, d, std::nullopt};
  CouplingProfile c{2.0 * a.B - 0.5 * b.B, 40.0, d, std::nullopt};
  EXPECT_LT((beta_from_profile(c) - 2.0 * beta_from_profile(a) + 0.5 * beta_from_profile(b)).norm(), 1e-12);
}

TEST(GMax, FigureConfiguration) {
  const auto d = chain_decomposition(ChainSpec(8, 1.0, 0.2));
  const auto p = synthesize_profile(d, {CVec::Constant(8, -1.0), Basis::normal}, 200.0 * kPi,
                                    Vec::Constant(8, 1e-6));
  const double gm = g_max(p);
  EXPECT_NEAR(gm, 0.08, 0.15 * 0.08);
  double dense = 0.0;
  const double h = 2.0 * kPi / (d.nu.maxCoeff() * 200.0);
  for (double s = 0.0; s <= p.t; s += h) dense = std::max(dense, std::abs(evaluate_g(p, s)));
  EXPECT_GE(gm, dense - 1e-12);
  EXPECT_LE(gm, dense * (1.0 + 1e-4));
}

TEST(GMax, SingleToneAnalytic) {
  NormalModeDecomposition d = free_oscillator();
  CouplingProfile p{CVec::Constant(1, cplx{0.3, 0.4}), 10.0, d, std::nullopt};
  // g(s) = 2 Re[(i B / t) e^{-i s}] with |B| = 0.5.
  EXPECT_NEAR(g_max(p), 2.0 * 0.5 / 10.0, 1e-10);
  EXPECT_THROW(g_max(p, 0), InvalidArgument);
}

TEST(GRms, MatchesQuadratureAndDecreasesWithTime) {
  std::mt19937_64 rng(24);
  const auto d = random_decomposition(rng, 4);
  const double t0 = 2.0 * min_interaction_time(d);
  const CVec target = CVec::Constant(4, cplx{0.5, -0.5});
  const auto p1 = synthesize_profile(d, {target, Basis::normal}, t0);
  const auto p2 = synthesize_profile(d, {target, Basis::normal}, 2.0 * t0);
  const double ref = std::sqrt(
      oracle::simpson<double>([&](double s) { return std::pow(evaluate_g(p1, s), 2); }, 0.0, t0, 20000) / t0);
  EXPECT_NEAR(g_rms(p1), ref, 1e-8);
  EXPECT_LT(g_rms(p2), g_rms(p1));
}

TEST(ProfileCsv, HeaderAndSampling) {
  const auto d = free_oscillator();
  const auto p = synthesize_profile(d, {CVec::Constant(1, 0.2), Basis::normal}, 2.0 * kPi);
  std::ostringstream os;
  write_profile_csv(os, p, 10);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "s,g");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 11);
}

}  // namespace
