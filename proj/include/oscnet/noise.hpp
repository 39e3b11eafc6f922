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

#include "oscnet/network.hpp"

namespace oscnet {

/// White noise zeta(s) on the coupling with <zeta(s1) zeta(s2)> = epsilon delta(s1 - s2).
struct NoiseSpec {
  double epsilon = 0.0;
};

/// V_kk' = epsilon Re{G_k^* G_k' int_0^t e^{i(nu_k - nu_k')s} ds}.
Mat delta_beta_covariance(const NormalModeDecomposition& decomp, double t, double eps);

/// Square roots of the eigenvalues of V, ascending. Round-off negatives clip to zero.
Vec resolution_spectrum(const Mat& V);

struct MonteCarloOptions {
  std::uint64_t realizations = 10000;
  double dt = 0.0;  // 0 selects 0.005 / max(nu)
  std::uint64_t seed = 0;
  int workers = 1;
};

struct MonteCarloResult {
  Mat cov;         // sample Re <delta beta_k delta beta_k'^*>
  Mat cov_stderr;  // standard error of each entry
  CVec mean;
  Vec mean_stderr;  // standard error of |mean| components, per mode
  double dt = 0.0;
  std::uint64_t realizations = 0;
};

/// Samples delta beta_k = -i G_k^* int_0^t zeta(s) e^{i nu_k s} ds with
/// piecewise-constant zeta of variance eps/dt per step. The deterministic
/// part of g(s) does not enter delta beta, so no profile is needed.
MonteCarloResult monte_carlo_delta_beta(const NormalModeDecomposition& decomp, double t, double eps,
                                        const MonteCarloOptions& opts = {});

}  // namespace oscnet
