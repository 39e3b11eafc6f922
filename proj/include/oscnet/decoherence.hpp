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
#include <limits>

#include "oscnet/dynamics.hpp"
#include "oscnet/fock.hpp"
#include "oscnet/protocol.hpp"

namespace oscnet {

/// Markovian decoherence diagonal in the normal modes, plus qubit
/// relaxation (Gamma1 at bath occupation Nq) and dephasing (Gamma2).
struct DecoherenceSpec {
  Vec kappa;
  Vec Nbar;
  double Gamma1 = 0.0;
  double Gamma2 = 0.0;
  double Nq = 0.0;

  /// No damping at all on `modes` modes.
  static DecoherenceSpec none(int modes);
  /// Uniform rate kappa and bath temperature T on every normal mode.
  static DecoherenceSpec thermal_bath(const NormalModeDecomposition& decomp, double kappa, double T);

  int modes() const { return static_cast<int>(kappa.size()); }
  /// Gamma1 (Nq + 1/2) + 2 Gamma2.
  double gamma() const { return Gamma1 * (Nq + 0.5) + 2.0 * Gamma2; }
  /// Nbar + 1/2.
  Vec Delta() const { return Nbar.array() + 0.5; }
  void validate() const;
};

/// eta_k = 2 i G_k^* int_0^t g(s) e^{i nu_k s - kappa_k s/2} ds.
CVec eta_from_profile(const CouplingProfile& profile, const DecoherenceSpec& deco);

/// mu_k(s) = [2 i G_k^* / sinh(kappa_k s/2)] int_0^s g(u) e^{i nu_k u} sinh(kappa_k u/2) du,
/// with the kappa -> 0 limit used for kappa_k <= 1e-12.
CVec mu_k(const CouplingProfile& profile, const DecoherenceSpec& deco, double s);

struct DampingOptions {
  double rel_tol = 1e-8;
};

/// f = gamma t + sum_k [Delta_k (1 - e^{-kappa_k t}) |mu_k(t)|^2 + tau_k(t)],
/// tau_k = kappa_k Delta_k int_0^t |mu_k(s)|^2 ds. t defaults to profile.t.
double damping_factor(const CouplingProfile& profile, const DecoherenceSpec& deco,
                      double t = std::numeric_limits<double>::quiet_NaN(),
                      const DampingOptions& opts = {});

/// chi e^{-f}.
cplx measured_signal(cplx chi_true, double f);

/// chi_corrected = (est_s1 + i est_s2) e^f, chi_err = stderr e^f. Flags
/// over_amplified when e^f > 100.
MeasurementRecord correct_signal(MeasurementRecord record, double f);

/// kappa_k = 2 pi f_env(nu_k)^2.
Vec kappa_from_spectral_density(const std::function<double(double)>& f_env, const Vec& nu);

/// min_k 1/(kappa_k Nbar_k) times min_n omega_n / max |K_nm|. Infinite when
/// K = 0 or every kappa_k Nbar_k vanishes.
double validity_horizon(const DecoherenceSpec& deco, const NetworkSpec& spec);

struct LindbladOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double leak_tol = 1e-6;
};

struct LindbladDiagnostics {
  double trace = 0.0;
  double min_eigenvalue = 0.0;
  double boundary_population = 0.0;
};

/// Direct integration of the master equation for one oscillator and the
/// qubit in the truncated Fock basis, qubit prepared in |+>. Throws
/// TruncationLeak like brute_force_evolve.
QubitExpectation brute_force_lindblad(const FockEnsemble& initial, const CouplingProfile& profile,
                                      const NetworkSpec& spec, const DecoherenceSpec& deco, double t,
                                      const LindbladOptions& opts = {},
                                      LindbladDiagnostics* diagnostics = nullptr);

}  // namespace oscnet
