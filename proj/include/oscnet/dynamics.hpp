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
#include <functional>
#include <vector>

#include "oscnet/network.hpp"

namespace oscnet {

/// Gaussian state over local quadratures ordered (x_1..x_N, p_1..p_N) with
/// a = (x + i p)/sqrt(2); the vacuum has covariance 1/2.
class GaussianState {
 public:
  /// Throws InvalidArgument unless V + i Omega/2 >= 0 (to -1e-10).
  GaussianState(Vec mean, Mat cov);

  static GaussianState vacuum(int modes);
  static GaussianState coherent(const CVec& alpha);
  /// Product of local thermal states with occupations nbar.
  static GaussianState thermal(const Vec& nbar);
  /// Single-mode squeezed vacuum S(z)|0> on one mode, z = r e^{i phi},
  /// S(z) = exp((z^* a^2 - z a^{+2})/2). Other modes are in vacuum.
  static GaussianState squeezed(int modes, int mode, double r, double phi);
  /// (1/cosh r) sum_n tanh(r)^n |n, n> on modes (m1, m2); others in vacuum.
  static GaussianState two_mode_squeezed(int modes, int m1, int m2, double r);
  /// Thermal state of H0: every normal mode in equilibrium at temperature T,
  /// expressed in local quadratures.
  static GaussianState network_thermal(const NormalModeDecomposition& decomp, double T);

  int modes() const { return static_cast<int>(mean_.size() / 2); }
  const Vec& mean() const { return mean_; }
  const Mat& cov() const { return cov_; }

  /// Marginal over the listed modes, in the given order.
  GaussianState marginal(const std::vector<int>& keep) const;

 private:
  Vec mean_;
  Mat cov_;
};

/// Weyl characteristic function tr{rho exp(xi.a^+ - xi^*.a)}.
cplx chi_gaussian(const GaussianState& state, const CVec& xi);

/// Bose-Einstein occupation 1/(e^{nu/T} - 1); zero for T <= 0.
double thermal_occupation(double nu, double T);

/// exp(-sum_k [N(nu_k) + 1/2] |eta_k|^2).
cplx thermal_chi(const CVec& eta, double T, const Vec& nu);

struct QubitExpectation {
  double s1 = 0.0;
  double s2 = 0.0;

  cplx signal() const { return {s1, s2}; }
};

/// <sigma_1> + i <sigma_2> = chi. Throws NonPhysicalChi if |chi| > 1 + 1e-9.
QubitExpectation ideal_measurement(cplx chi_value);

/// One simulated phase-space point.
struct MeasurementRecord {
  CVec point;
  Basis basis = Basis::local;
  std::uint64_t shots = 0;  // 0 marks an exact (noiseless) record
  double est_s1 = 0.0;
  double est_s2 = 0.0;
  double stderr_ = 0.0;
  double f = 0.0;
  cplx chi_corrected;
  double chi_err = 0.0;
  bool over_amplified = false;  // e^f > 100 after correction

  cplx signal() const { return {est_s1, est_s2}; }
};

/// Reproducible stream seed for (master seed, index, stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t stream = 0);

/// sigma_1 and sigma_2 are sampled in separate runs of `shots` draws each.
/// stderr_ combines both estimators: sqrt(se_1^2 + se_2^2).
MeasurementRecord sample_shots(const QubitExpectation& truth, std::uint64_t shots,
                               std::uint64_t seed);

/// Record carrying the exact expectation values (shots = 0, zero error).
MeasurementRecord exact_record(const QubitExpectation& truth);

using ChiFunction = std::function<cplx(const CVec&)>;

/// chi restricted to the modes in keep; discarded components are pinned to 0.
ChiFunction reduced_chi(ChiFunction chi, int total_modes, std::vector<int> keep);

}  // namespace oscnet
