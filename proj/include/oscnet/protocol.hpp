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
#include <ostream>
#include <vector>

#include "oscnet/network.hpp"

namespace oscnet {

/// pi / min_{j!=k} |nu_j - nu_k|. A single mode has no pair to resolve; its
/// only constraint is the counter-rotating frequency 2 nu, so pi / (2 nu) is
/// returned. Throws DegenerateSpectrum when the smallest gap is <= gap_tol.
double min_interaction_time(const NormalModeDecomposition& decomp, double gap_tol = 1e-8);

/// max(2 * min_interaction_time, requested).
double select_interaction_time(const NormalModeDecomposition& decomp, double requested = 0.0);

/// Linear map (-beta^*, beta) = M (-B^*, B) from pulse coefficients to the
/// achieved normal-mode displacement. With damping rates kappa the same map
/// gives (-eta^*, eta) = -2 M (-B^*, B).
struct MMatrix {
  CMat M1, M2, M3, M4;
  double t = 0.0;
  std::optional<Vec> kappa;
  cplx det;
  double cond = 0.0;

  CMat full() const;
};

/// Closed-form M. Throws AssumptionViolation if some |G_l| <= g_tol.
MMatrix build_M(const NormalModeDecomposition& decomp, double t,
                const std::optional<Vec>& kappa = std::nullopt, double g_tol = 1e-8);

struct DisplacementTarget {
  CVec values;
  Basis basis = Basis::normal;
};

/// Coupling profile g(s) = (i/t) sum_l [ B_l/G_l^* e^{-i nu_l s} - B_l^*/G_l e^{i nu_l s} ]
/// on s in [0, t].
struct CouplingProfile {
  CVec B;
  double t = 0.0;
  NormalModeDecomposition decomp;
  std::optional<Vec> kappa;

  int modes() const { return static_cast<int>(B.size()); }
};

/// One term a e^{i w s} of g(s).
struct Tone {
  cplx amplitude;
  double frequency;
};

std::vector<Tone> tones(const CouplingProfile& profile);

struct SynthesisOptions {
  double max_cond = 1e8;
  double g_tol = 1e-8;
  double symmetry_tol = 1e-10;
};

/// Solves for the B coefficients that realize the target displacement. For
/// local targets alpha is first mapped to beta. With kappa the target is the
/// damped displacement -eta/2, i.e. the profile produces eta = -2 * target.
/// Throws IllConditioned if cond(M) exceeds opts.max_cond.
CouplingProfile synthesize_profile(const NormalModeDecomposition& decomp,
                                   const DisplacementTarget& target, double t,
                                   const std::optional<Vec>& kappa = std::nullopt,
                                   const SynthesisOptions& opts = {});

double evaluate_g(const CouplingProfile& profile, double s);

/// Complex sum of the tones; its imaginary part is round-off only.
cplx evaluate_g_complex(const CouplingProfile& profile, double s);

/// beta_k = -i G_k^* int_0^t g(s) e^{i nu_k s} ds in closed form.
CVec beta_from_profile(const CouplingProfile& profile);

/// eta_k = 2 i G_k^* int_0^t g(s) e^{i nu_k s - kappa_k s / 2} ds.
CVec beta_from_profile(const CouplingProfile& profile, const Vec& kappa);

/// beta_k for an arbitrary waveform, by adaptive quadrature.
CVec beta_from_waveform(const std::function<double(double)>& g,
                        const NormalModeDecomposition& decomp, double t);

/// max_s |g(s)| from a uniform grid with samples_per_period points per
/// period 2 pi / nu_max, refined around the largest local maxima.
double g_max(const CouplingProfile& profile, int samples_per_period = 20);

/// sqrt((1/t) int_0^t g(s)^2 ds), closed form.
double g_rms(const CouplingProfile& profile);

/// CSV with header "s,g" sampled uniformly over [0, t].
void write_profile_csv(std::ostream& os, const CouplingProfile& profile,
                       int samples_per_period = 20);

}  // namespace oscnet
