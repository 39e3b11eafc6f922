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

#include "oracles.hpp"
#include "oscnet/chain.hpp"
#include "oscnet/dynamics.hpp"
#include "oscnet/fock.hpp"

namespace {

using namespace oscnet;

CVec one(cplx x) { return CVec::Constant(1, x); }

CVec two(cplx a, cplx b) {
  CVec v(2);
  v << a, b;
  return v;
}

std::vector<cplx> probe_points() {
  std::vector<cplx> out;
  for (double r : {0.0, 0.3, 0.9, 1.6, 2.0}) {
    for (int a = 0; a < 6; ++a) out.push_back(std::polar(r, 0.4 + a * std::numbers::pi / 3.0));
  }
  return out;
}

TEST(GaussianChi, VacuumAndNormalization) {
  const auto vac = GaussianState::vacuum(1);
  for (cplx x : probe_points()) EXPECT_NEAR(std::abs(chi_gaussian(vac, one(x)) - oracle::chi_vacuum(x)), 0.0, 1e-15);
  const auto sq = GaussianState::squeezed(2, 1, 0.4, 0.3);
  EXPECT_NEAR(std::abs(chi_gaussian(sq, CVec::Zero(2)) - 1.0), 0.0, 1e-15);
}

TEST(GaussianChi, CoherentSignConvention) {
  const cplx a{0.4, -0.7};
  const auto s = GaussianState::coherent(one(a));
  for (cplx x : probe_points()) {
    EXPECT_NEAR(std::abs(chi_gaussian(s, one(x)) - oracle::chi_coherent(x, a)), 0.0, 1e-14);
  }
}

TEST(GaussianChi, ClosedFormsForCatalogStates) {
  const auto th = GaussianState::thermal(Vec::Constant(1, 2.0));
  const auto sq = GaussianState::squeezed(1, 0, 0.5, 1.1);
  const auto tms = GaussianState::two_mode_squeezed(2, 0, 1, 0.6);
  for (cplx x : probe_points()) {
    EXPECT_NEAR(std::abs(chi_gaussian(th, one(x)) - oracle::chi_thermal(x, 2.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(chi_gaussian(sq, one(x)) - oracle::chi_squeezed(x, 0.5, 1.1)), 0.0, 1e-14);
    const cplx y = std::conj(x) * 0.5 + 0.1;
    EXPECT_NEAR(std::abs(chi_gaussian(tms, two(x, y)) - oracle::chi_two_mode_squeezed(x, y, 0.6)), 0.0, 1e-14);
  }
}

TEST(GaussianChi, AgreesWithFockOracle) {
  const int D = 25;
  const std::vector<std::pair<GaussianState, FockEnsemble>> cases = {
      {GaussianState::vacuum(1), FockEnsemble::pure(FockState::vacuum(1, D))},
      {GaussianState::coherent(one({0.5, 0.2})), FockEnsemble::pure(FockState::coherent(one({0.5, 0.2}), D))},
      {GaussianState::thermal(Vec::Constant(1, 0.3)), FockEnsemble::thermal(Vec::Constant(1, 0.3), D)},
      {GaussianState::squeezed(1, 0, 0.3, 0.8), FockEnsemble::pure(FockState::squeezed(1, 0, 0.3, 0.8, D))},
  };
  for (const auto& [g, f] : cases) {
    for (cplx x : probe_points()) {
      EXPECT_NEAR(std::abs(chi_gaussian(g, one(x)) - chi_fock(f, one(x))), 0.0, 1e-6) << x;
    }
  }
  const auto tms_g = GaussianState::two_mode_squeezed(2, 0, 1, 0.3);
  const auto tms_f = FockState::two_mode_squeezed(0.3, 12);
  for (cplx x : {cplx{0.3, 0.1}, cplx{-0.5, 0.4}}) {
    EXPECT_NEAR(std::abs(chi_gaussian(tms_g, two(x, 0.2)) - chi_fock(tms_f, two(x, 0.2))), 0.0, 1e-6);
  }
}

TEST(GaussianChi, HermiticityAndBound) {
  const auto s = GaussianState::squeezed(1, 0, 0.7, -0.4);
  const auto c = GaussianState::coherent(one({1.0, 0.5}));
  for (const auto* st : {&s, &c}) {
    for (cplx x : probe_points()) {
      const cplx a = chi_gaussian(*st, one(x));
      EXPECT_LE(std::abs(a), 1.0 + 1e-15);
      EXPECT_NEAR(std::abs(chi_gaussian(*st, one(-x)) - std::conj(a)), 0.0, 1e-15);
    }
  }
}

TEST(GaussianState, RejectsUnphysicalCovariance) {
  EXPECT_THROW(GaussianState(Vec::Zero(2), 0.2 * Mat::Identity(2, 2)), InvalidArgument);
  EXPECT_NO_THROW(GaussianState(Vec::Zero(2), 0.5 * Mat::Identity(2, 2)));
  EXPECT_THROW(GaussianState(Vec::Zero(3), Mat::Identity(3, 3)), InvalidArgument);
}

TEST(GaussianState, MarginalMatchesReducedChi) {
  const auto tms = GaussianState::two_mode_squeezed(2, 0, 1, 0.5);
  const auto m = tms.marginal({1});
  ChiFunction full = [&](const CVec& x) { return chi_gaussian(tms, x); };
  const auto reduced = reduced_chi(full, 2, {1});
  const double nbar = std::pow(std::sinh(0.5), 2);
  for (cplx x : probe_points()) {
    EXPECT_NEAR(std::abs(chi_gaussian(m, one(x)) - reduced(one(x))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(reduced(one(x)) - oracle::chi_thermal(x, nbar)), 0.0, 1e-14);
  }
  const auto all = reduced_chi(full, 2, {0, 1});
  EXPECT_EQ(all(two(0.3, 0.1)), full(two(0.3, 0.1)));
  const auto vac = GaussianState::vacuum(2);
  const auto rv = reduced_chi([&](const CVec& x) { return chi_gaussian(vac, x); }, 2, {1});
  EXPECT_NEAR(std::abs(rv(one(0.7)) - oracle::chi_vacuum(0.7)), 0.0, 1e-15);
}

TEST(ThermalChi, Examples) {
  const CVec eta = CVec::Constant(1, 1.0);
  const double n = 1.0 / std::expm1(1.0 / 200.0);
  EXPECT_NEAR(thermal_occupation(1.0, 200.0), n, 1e-12);
  EXPECT_NEAR(n, 199.5, 0.01);
  EXPECT_NEAR(std::abs(thermal_chi(eta, 200.0, Vec::Ones(1))), std::exp(-(n + 0.5)), 1e-100);
  EXPECT_NEAR(std::abs(thermal_chi(eta, 200.0, Vec::Ones(1))) / std::exp(-200.0), 1.0, 1e-3);
  EXPECT_EQ(thermal_chi(CVec::Zero(3), 5.0, Vec::Ones(3)), cplx(1.0, 0.0));
  const CVec e2 = CVec::Constant(2, cplx{0.3, 0.4});
  EXPECT_NEAR(std::abs(thermal_chi(e2, 1e-9, Vec::Ones(2)) - std::exp(-0.5 * e2.squaredNorm())), 0.0, 1e-15);
}

TEST(ThermalChi, MatchesNetworkThermalState) {
  const auto d = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  const auto state = GaussianState::network_thermal(d, 1.7);
  for (cplx x : probe_points()) {
    const CVec xi = CVec::Constant(3, 0.3 * x);
    const CVec eta = local_normal_convert(d, xi, Direction::local_to_normal);
    EXPECT_NEAR(std::abs(chi_gaussian(state, xi) - thermal_chi(eta, 1.7, d.nu)), 0.0, 1e-12);
  }
}

TEST(IdealMeasurement, Examples) {
  auto q = ideal_measurement(1.0);
  EXPECT_EQ(q.s1, 1.0);
  EXPECT_EQ(q.s2, 0.0);
  q = ideal_measurement(std::exp(-0.5));
  EXPECT_NEAR(q.s1, 0.6065, 1e-4);
  q = ideal_measurement(cplx{0.0, 0.3});
  EXPECT_EQ(q.s1, 0.0);
  EXPECT_EQ(q.s2, 0.3);
  EXPECT_THROW(ideal_measurement(cplx{1.2, 0.0}), NonPhysicalChi);
}

TEST(SampleShots, DegenerateAndSingleShot) {
  const auto r = sample_shots({1.0, 0.0}, 137, 5);
  EXPECT_EQ(r.est_s1, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto one_shot = sample_shots({0.2, -0.4}, 1, seed);
    EXPECT_TRUE(one_shot.est_s1 == 1.0 || one_shot.est_s1 == -1.0);
    EXPECT_TRUE(one_shot.est_s2 == 1.0 || one_shot.est_s2 == -1.0);
  }
  EXPECT_THROW(sample_shots({0.0, 0.0}, 0, 1), InvalidArgument);
}

TEST(SampleShots, ConcentrationAndUnbiasedness) {
  int inside = 0;
  double mean = 0.0;
  double se = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = sample_shots({0.0, 0.35}, 10000, derive_seed(77, seed));
    inside += std::abs(r.est_s1) <= 0.03;
    mean += r.est_s2 / 200.0;
    se += r.stderr_ / 200.0;
  }
  EXPECT_GE(inside, 195);
  // stderr_ combines both estimators; each one is at most that large.
  EXPECT_LE(std::abs(mean - 0.35), 4.0 * se / std::sqrt(200.0));
}

TEST(SampleShots, DeterministicPerSeed) {
  const auto a = sample_shots({0.3, 0.1}, 5000, 42);
  const auto b = sample_shots({0.3, 0.1}, 5000, 42);
  const auto c = sample_shots({0.3, 0.1}, 5000, 43);
  EXPECT_EQ(a.est_s1, b.est_s1);
  EXPECT_EQ(a.est_s2, b.est_s2);
  EXPECT_TRUE(a.est_s1 != c.est_s1 || a.est_s2 != c.est_s2);
  EXPECT_NE(derive_seed(1, 2, 0), derive_seed(1, 2, 1));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
}

TEST(ExactRecord, CarriesTruth) {
  const auto r = exact_record({0.25, -0.5});
  EXPECT_EQ(r.shots, 0u);
  EXPECT_EQ(r.est_s1, 0.25);
  EXPECT_EQ(r.est_s2, -0.5);
  EXPECT_EQ(r.stderr_, 0.0);
}

}  // namespace
