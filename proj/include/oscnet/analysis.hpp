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

#include "oscnet/dynamics.hpp"

namespace oscnet {

struct ChiSample {
  CVec point;
  cplx value;
  double err = 0.0;
};

/// Samples from measurement records: point and corrected chi with its error.
std::vector<ChiSample> samples_from_records(const std::vector<MeasurementRecord>& records);

struct MomentFit {
  int order = 1;
  CVec mean;            // <a_j>
  Vec mean_stderr;      // standard error of |<a_j>| components
  CMat number;          // <a_j^+ a_k>, empty for order 1
  Mat number_stderr;    // entrywise standard error of |<a_j^+ a_k>|
  CMat anomalous;       // <a_j a_k>, empty for order 1
  cplx log_norm;        // fitted log chi(0); zero for normalized data
  double chi2 = 0.0;    // weighted residual sum of squares
  int used_samples = 0;
};

struct MomentFitOptions {
  double window = 0.3;
  double err_floor = 1e-12;
};

/// Weighted least-squares fit of log chi near the origin by its cumulant
/// polynomial in (xi, xi^*):
///   log chi = c0 + sum_j (xi_j m_j^* - xi_j^* m_j)
///             + (1/2) sum_jk [xi_j xi_k C_jk^* + xi_j^* xi_k^* C_jk]
///             - (1/2) sum_jk xi_j xi_k^* (2 N_jk + delta_jk).
/// Order 1 keeps the linear terms only. Throws RankDeficient when the
/// points do not determine the coefficients.
MomentFit fit_moments(const std::vector<ChiSample>& samples, int order,
                      const MomentFitOptions& opts = {});

struct TemperatureOptions {
  double T_min = 0.0;  // 0 selects 1e-3 * min(nu)
  double T_max = 0.0;  // 0 selects 1e6 * max(nu)
  double err_floor = 1e-6;
  int grid = 400;
};

struct TemperatureEstimate {
  double T = 0.0;
  double residual = 0.0;   // weighted sum of squared residuals at T
  double threshold = 0.0;  // 99th percentile of chi-squared with dof
  int dof = 0;
  bool not_thermal = false;
  bool at_lower_bound = false;
};

/// Fits exp(-sum_k [N(nu_k) + 1/2] |eta_k|^2) in T to normal-basis samples.
TemperatureEstimate estimate_temperature(const std::vector<ChiSample>& samples, const Vec& nu,
                                         const TemperatureOptions& opts = {});

struct BochnerResult {
  double min_eigenvalue = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool normalized = false;       // |chi(0) - 1| <= tol
  bool imputed_origin = false;   // chi(0) = 1 was assumed
  std::vector<int> used;         // sample indices forming the kernel nodes
};

struct BochnerOptions {
  double match_tol = 1e-9;
  double min_tol = 1e-10;
};

/// Kernel B_jk = chi(xi_j - xi_k) exp((xi_j . xi_k^* - xi_j^* . xi_k)/2) on
/// the largest greedily found subset whose pairwise differences were sampled
/// (directly or through chi(-xi) = chi(xi)^*). Passes when the smallest
/// eigenvalue is >= -tol and chi(0) is normalized, tol = max(3 max err, min_tol).
/// Throws InsufficientClosure when fewer than min(3, samples) nodes remain.
BochnerResult bochner_check(const std::vector<ChiSample>& samples, const BochnerOptions& opts = {});

/// All pairwise differences of the nodes, duplicates removed; sampling chi
/// there makes the nodes difference closed.
std::vector<CVec> difference_set(const std::vector<CVec>& nodes, double tol = 1e-12);

/// Origin plus `rings` rings of `angles` points per mode, radii
/// spacing * (1..rings); other modes stay at zero. Pair grids add the same
/// rings on (xi_j, xi_k) = r (e^{i a}, e^{i b}) / sqrt(2) along 4 relative phases.
std::vector<CVec> star_grid(int modes, double spacing, int rings = 2, int angles = 8,
                            bool pairs = true);

}  // namespace oscnet
