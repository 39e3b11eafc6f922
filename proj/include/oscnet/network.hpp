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

#include <utility>
#include <vector>

#include "oscnet/types.hpp"

namespace oscnet {

/// Quadratic network Hamiltonian
///   H0 = sum_n w_n a_n^+ a_n + sum_{n<m} J_nm (a_n a_m^+ + h.c.)
///                            + sum_{n<m} K_nm (a_n a_m + h.c.).
/// J and K are stored as full symmetric matrices with zero diagonal.
struct NetworkSpec {
  Vec omega;
  Mat J;
  Mat K;

  NetworkSpec() = default;
  NetworkSpec(Vec omega_, Mat J_, Mat K_);

  static NetworkSpec uncoupled(const Vec& omega);

  int modes() const { return static_cast<int>(omega.size()); }

  /// Throws InvalidArgument if the invariants do not hold.
  void validate() const;
};

/// Normal-mode (Bogoliubov) decomposition b = S1 a + S2 a^+ with
/// eigenfrequencies nu sorted ascending and probe couplings
/// G_k = conj((S1 - S2)_{k,probe}).
struct NormalModeDecomposition {
  Vec nu;
  CMat S1;
  CMat S2;
  CVec G;
  int probe = 0;

  int modes() const { return static_cast<int>(nu.size()); }

  /// Full 2N x 2N matrix [[S1, S2], [S2*, S1*]] acting on (a, a^+).
  CMat symplectic() const;
};

/// Coefficient matrix H_qf of H0 in the ordered basis (a, a^+):
/// H0 = 1/2 (a^+, a)^T H_qf (a, a^+) + const.
CMat build_quadratic_form(const NetworkSpec& spec);

/// Bogoliubov diagonalization of H0; probe is the (0-based) node coupled to
/// the qubit. Throws UnstableNetwork when H0 has a non-positive normal mode.
NormalModeDecomposition diagonalize(const NetworkSpec& spec, int probe = 0);

/// Rotates every normal mode so that G_k is real and non-negative. Modes with
/// |G_k| <= g_tol are instead fixed by making the largest entry of row k of S1
/// real positive.
void fix_gauge(NormalModeDecomposition& decomp, double g_tol = 1e-8);

/// Recomputes G from S1, S2 and the probe index.
CVec probe_couplings(const CMat& S1, const CMat& S2, int probe);

struct SymplecticResidual {
  double normalization = 0.0;  // max |S1^+ S1 - (S2^+ S2)^* - 1|
  double symmetry = 0.0;       // max |S1^+ S2 - (S2^+ S1)^*|
};

SymplecticResidual verify_symplectic(const NormalModeDecomposition& decomp);

/// Largest off-diagonal entry of T^+ H_qf T with T = S^{-1}, together with
/// the largest deviation of its diagonal from (nu, nu).
std::pair<double, double> diagonal_form_residual(const NetworkSpec& spec,
                                                 const NormalModeDecomposition& decomp);

struct AssumptionTolerances {
  double g_tol = 1e-8;
  double gap_tol = 1e-8;
  double warn_gap = 1e-6;
};

struct AssumptionReport {
  bool a1 = true;  // every normal mode couples to the probe
  bool a2 = true;  // non-degenerate spectrum
  bool near_degenerate = false;
  double min_abs_G = 0.0;
  double min_gap = 0.0;  // +inf for a single mode
  std::vector<int> weak_modes;
  std::vector<std::pair<int, int>> degenerate_pairs;

  bool ok() const { return a1 && a2; }
};

AssumptionReport check_assumptions(const NormalModeDecomposition& decomp,
                                   const AssumptionTolerances& tol = {});

enum class Direction { local_to_normal, normal_to_local };

/// Maps displacement parameters between bases using
/// (-alpha^*, alpha) = S^T (-beta^*, beta).
CVec local_normal_convert(const NormalModeDecomposition& decomp, const CVec& vec,
                          Direction direction);

/// Real symplectic matrix acting on local quadratures (x_1..x_N, p_1..p_N)
/// that yields the normal-mode quadratures.
Mat quadrature_symplectic(const NormalModeDecomposition& decomp);

}  // namespace oscnet
