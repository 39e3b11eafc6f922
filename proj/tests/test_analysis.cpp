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
#include "oscnet/analysis.hpp"
#include "oscnet/chain.hpp"

namespace {

using namespace oscnet;

using ChiFn = std::function<cplx(const CVec&)>;

std::vector<ChiSample> sample(const std::vector<CVec>& pts, const ChiFn& chi, double err = 0.0) {
  std::vector<ChiSample> out;
  for (const auto& p : pts) out.push_back({p, chi(p), err});
  return out;
}

ChiFn single(cplx (*f)(cplx)) {
  return [f](const CVec& x) { return f(x[0]); };
}

TEST(FitMoments, VacuumGivesZeroMoments) {
  const auto s = sample(star_grid(1, 0.1, 2, 12), single(oracle::chi_vacuum));
  const auto fit = fit_moments(s, 2);
  EXPECT_EQ(fit.order, 2);
  EXPECT_LT(std::abs(fit.mean[0]), 1e-10);
  EXPECT_LT(std::abs(fit.number(0, 0)), 1e-10);
  EXPECT_LT(std::abs(fit.anomalous(0, 0)), 1e-10);
  EXPECT_EQ(fit.used_samples, 25);
}

TEST(FitMoments, CoherentMean) {
  const cplx a{0.3, 0.0};
  const auto s = sample(star_grid(1, 0.1, 3, 8), [&](const CVec& x) { return oracle::chi_coherent(x[0], a); });
  const auto fit = fit_moments(s, 2);
  EXPECT_NEAR(std::abs(fit.mean[0] - a), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(fit.number(0, 0) - std::norm(a)), 0.0, 1e-8);
  // Order one recovers the mean on a symmetric grid as well.
  EXPECT_NEAR(std::abs(fit_moments(s, 1).mean[0] - a), 0.0, 1e-8);
  EXPECT_EQ(fit_moments(s, 1).number.size(), 0);
}

TEST(FitMoments, ThermalOccupation) {
  const auto s = sample(star_grid(1, 0.1, 3, 8), [](const CVec& x) { return oracle::chi_thermal(x[0], 2.0); });
  EXPECT_NEAR(fit_moments(s, 2).number(0, 0).real(), 2.0, 1e-6);
}

TEST(FitMoments, ExactOnGaussianStates) {
  const double r = 0.35;
  const auto sq = GaussianState::squeezed(1, 0, r, 0.6);
  const auto s1 = sample(star_grid(1, 0.1, 3, 8), [&](const CVec& x) { return chi_gaussian(sq, x); });
  const auto f1 = fit_moments(s1, 2);
  EXPECT_NEAR(f1.number(0, 0).real(), std::sinh(r) * std::sinh(r), 1e-8);
  EXPECT_NEAR(std::abs(f1.anomalous(0, 0)), std::sinh(r) * std::cosh(r), 1e-8);

  const auto tms = GaussianState::two_mode_squeezed(2, 0, 1, r);
  const auto s2 = sample(star_grid(2, 0.1, 3, 8), [&](const CVec& x) { return chi_gaussian(tms, x); });
  const auto f2 = fit_moments(s2, 2);
  EXPECT_NEAR(f2.number(0, 0).real(), std::sinh(r) * std::sinh(r), 1e-8);
  EXPECT_NEAR(f2.number(1, 1).real(), std::sinh(r) * std::sinh(r), 1e-8);
  EXPECT_NEAR(std::abs(f2.number(0, 1)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(f2.anomalous(0, 1)), std::sinh(r) * std::cosh(r), 1e-8);
  EXPECT_NEAR(std::abs(f2.anomalous(0, 0)), 0.0, 1e-8);
}

TEST(FitMoments, StandardErrorsScaleWithSampleErrors) {
  const auto pts = star_grid(1, 0.1, 3, 8);
  const auto a = fit_moments(sample(pts, single(oracle::chi_vacuum), 1e-3), 2);
  const auto b = fit_moments(sample(pts, single(oracle::chi_vacuum), 2e-3), 2);
  EXPECT_GT(a.mean_stderr[0], 0.0);
  EXPECT_NEAR(b.mean_stderr[0] / a.mean_stderr[0], 2.0, 1e-9);
}

TEST(FitMoments, RejectsBadInput) {
  const auto pts = star_grid(1, 0.1, 3, 8);
  const auto s = sample(pts, single(oracle::chi_vacuum));
  EXPECT_THROW(fit_moments(s, 3), InvalidArgument);
  EXPECT_THROW(fit_moments({}, 1), InvalidArgument);
  EXPECT_THROW(fit_moments(std::vector<ChiSample>(s.begin(), s.begin() + 4), 2), InvalidArgument);
  // Points on a single line cannot separate a from a^+.
  std::vector<CVec> line;
  for (int i = -12; i <= 12; ++i) line.push_back(CVec::Constant(1, cplx(0.02 * i, 0.0)));
  EXPECT_THROW(fit_moments(sample(line, single(oracle::chi_vacuum)), 2), RankDeficient);
}

std::vector<CVec> per_mode_points(int modes, double radius) {
  std::vector<CVec> pts;
  for (int k = 0; k < modes; ++k) {
    for (int a = 0; a < 4; ++a) {
      CVec p = CVec::Zero(modes);
      p[k] = std::polar(radius * (1.0 + 0.5 * a), 0.3 + 1.1 * a);
      pts.push_back(p);
    }
  }
  return pts;
}

ChiFn thermal_chi_fn(const Vec& nu, double T) {
  return [nu, T](const CVec& x) {
    cplx v = 1.0;
    for (Eigen::Index k = 0; k < nu.size(); ++k) v *= oracle::chi_thermal(x[k], oracle::bose(nu[k], T));
    return v;
  };
}

TEST(Temperature, RecoversHotChain) {
  const auto d = chain_decomposition(ChainSpec(8, 1.0, 0.2));
  const auto s = sample(per_mode_points(8, 0.02), thermal_chi_fn(d.nu, 200.0));
  const auto est = estimate_temperature(s, d.nu);
  EXPECT_NEAR(est.T / 200.0, 1.0, 1e-3);
  EXPECT_FALSE(est.not_thermal);
  EXPECT_FALSE(est.at_lower_bound);
  EXPECT_GT(est.dof, 0);
}

TEST(Temperature, CoherentStateIsFlagged) {
  const auto d = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  const CVec alpha = CVec::Constant(3, cplx(0.8, 0.3));
  const auto s = sample(per_mode_points(3, 0.2), [&](const CVec& x) {
    cplx v = 1.0;
    for (int k = 0; k < 3; ++k) v *= oracle::chi_coherent(x[k], alpha[k]);
    return v;
  });
  EXPECT_TRUE(estimate_temperature(s, d.nu).not_thermal);
}

TEST(Temperature, VacuumPinsLowerBound) {
  const auto d = chain_decomposition(ChainSpec(3, 1.0, 0.2));
  const auto s = sample(per_mode_points(3, 0.3), thermal_chi_fn(d.nu, 0.0));
  const auto est = estimate_temperature(s, d.nu);
  EXPECT_TRUE(est.at_lower_bound);
  EXPECT_FALSE(est.not_thermal);
  EXPECT_LT(est.residual, est.threshold);
  EXPECT_NEAR(est.T / (1e-3 * d.nu.minCoeff()), 1.0, 1e-6);
}

TEST(Temperature, ScaleConsistent) {
  const auto d = chain_decomposition(ChainSpec(4, 1.0, 0.2));
  for (double T : {0.7, 3.0, 40.0}) {
    const auto pts = per_mode_points(4, 0.5 / std::sqrt(T));
    const auto a = estimate_temperature(sample(pts, thermal_chi_fn(d.nu, T)), d.nu);
    for (double c : {0.25, 10.0}) {
      const Vec nu = c * d.nu;
      const auto b = estimate_temperature(sample(pts, thermal_chi_fn(nu, c * T)), nu);
      EXPECT_NEAR(b.T / (c * a.T), 1.0, 1e-5) << T << " " << c;
    }
  }
}

std::vector<CVec> closed_nodes_1() {
  std::vector<CVec> nodes;
  for (cplx z : {cplx{0, 0}, cplx{0.5, 0}, cplx{0, 0.5}, cplx{-0.5, 0.2}, cplx{0.3, -0.6}}) {
    nodes.push_back(CVec::Constant(1, z));
  }
  return nodes;
}

TEST(Bochner, VacuumOnFivePointGridIsPositive) {
  const auto nodes = closed_nodes_1();
  const auto s = sample(difference_set(nodes), single(oracle::chi_vacuum));
  const auto r = bochner_check(s);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.normalized);
  EXPECT_FALSE(r.imputed_origin);
  EXPECT_EQ(r.used.size(), 5u);
  EXPECT_GE(r.min_eigenvalue, -1e-12);
  // Independent kernel with the same phase convention.
  EXPECT_NEAR(r.min_eigenvalue, oracle::bochner_min_eigenvalue(nodes, single(oracle::chi_vacuum)), 1e-12);
}

TEST(Bochner, TransposedStateOnMirroredNodesHasTheSameSpectrum) {
  // chi(-xi^*) belongs to the transposed density matrix; on conjugated nodes its
  // kernel is the complex conjugate of the original one.
  const auto nodes = closed_nodes_1();
  const auto sq = GaussianState::squeezed(1, 0, 0.5, 0.4);
  const ChiFn chi = [&](const CVec& x) { return chi_gaussian(sq, x) * oracle::chi_coherent(x[0], cplx(0.3, -0.5)); };
  std::vector<CVec> mirrored;
  for (const auto& n : nodes) mirrored.push_back(n.conjugate());
  const ChiFn transposed = [&](const CVec& x) { return chi(-x.conjugate()); };
  EXPECT_NEAR(oracle::bochner_min_eigenvalue(nodes, chi), oracle::bochner_min_eigenvalue(mirrored, transposed), 1e-13);
  const auto lib = bochner_check(sample(difference_set(mirrored), transposed));
  EXPECT_NEAR(lib.min_eigenvalue, oracle::bochner_min_eigenvalue(nodes, chi), 1e-12);
}

TEST(Bochner, CatalogStatesPassOnClosedGrids) {
  const auto nodes = closed_nodes_1();
  const auto sq = GaussianState::squeezed(1, 0, 0.4, 0.9);
  const std::vector<ChiFn> states = {
      single(oracle::chi_vacuum),
      [](const CVec& x) { return oracle::chi_thermal(x[0], 1.5); },
      [](const CVec& x) { return oracle::chi_coherent(x[0], cplx(-0.6, 0.8)); },
      [&](const CVec& x) { return chi_gaussian(sq, x); },
      [](const CVec& x) { return oracle::chi_even_cat(x[0], cplx(1.0, 0.5)); },
  };
  for (const auto& chi : states) {
    const auto r = bochner_check(sample(difference_set(nodes), chi));
    EXPECT_TRUE(r.pass);
    EXPECT_GE(r.min_eigenvalue, -1e-10);
  }
}

TEST(Bochner, ForgedNormalizationFails) {
  auto s = sample(difference_set(closed_nodes_1()), single(oracle::chi_vacuum));
  for (auto& x : s) {
    if (x.point.norm() == 0.0) x.value = 1.5;
  }
  const auto r = bochner_check(s);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.normalized);
}

TEST(Bochner, PerturbationsBeyondTheKernelMarginFail) {
  const auto base = sample(difference_set(closed_nodes_1()), single(oracle::chi_vacuum));
  const auto ref = bochner_check(base);
  ASSERT_TRUE(ref.pass);
  // chi(0) is pinned by normalization: anything above 10 tol is caught.
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (base[j].point.norm() != 0.0) continue;
    auto s = base;
    s[j].value += 11.0 * ref.tol;
    EXPECT_FALSE(bochner_check(s).pass);
  }
  // Elsewhere a perturbation must exceed the smallest kernel eigenvalue.
  const double delta = 40.0 * ref.min_eigenvalue;
  for (std::size_t j = 0; j < base.size(); ++j) {
    bool failed = false;
    for (cplx ph : {cplx{1, 0}, cplx{-1, 0}, cplx{0, 1}, cplx{0, -1}}) {
      auto s = base;
      s[j].value += delta * ph;
      failed = failed || !bochner_check(s).pass;
    }
    EXPECT_TRUE(failed) << "sample " << j;
  }
}

TEST(Bochner, TrivialAndInsufficientSets) {
  const auto r = bochner_check({{CVec::Zero(1), 1.0, 0.0}});
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.min_eigenvalue, 1.0, 1e-15);
  EXPECT_THROW(bochner_check({}), InsufficientClosure);
  // Three points whose differences were never measured.
  std::vector<ChiSample> sparse;
  for (cplx z : {cplx{0.3, 0}, cplx{0, 0.7}, cplx{-0.9, 0.4}}) {
    sparse.push_back({CVec::Constant(1, z), oracle::chi_vacuum(z), 0.0});
  }
  EXPECT_THROW(bochner_check(sparse), InsufficientClosure);
}

TEST(Grids, DifferenceSetIsClosedAndStarGridCounts) {
  const auto nodes = closed_nodes_1();
  const auto ds = difference_set(nodes);
  EXPECT_EQ(ds.size(), 21u);
  for (const auto& a : nodes) {
    for (const auto& b : nodes) {
      bool found = false;
      for (const auto& p : ds) found = found || (p - (a - b)).norm() < 1e-12;
      EXPECT_TRUE(found);
    }
  }
  EXPECT_EQ(star_grid(1, 0.1, 2, 8).size(), 17u);
  EXPECT_EQ(star_grid(2, 0.1, 2, 8, false).size(), 33u);
  EXPECT_EQ(star_grid(2, 0.1, 2, 8, true).size(), 33u + 64u);
  EXPECT_THROW(star_grid(0, 0.1), InvalidArgument);
}

}  // namespace
