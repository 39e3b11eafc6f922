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

#include <Eigen/SparseCore>

#include "oscnet/dynamics.hpp"
#include "oscnet/protocol.hpp"

// Truncated Fock-space representation used by the brute-force oracles.
namespace oscnet {

/// Pure state of N <= 2 modes in the product basis |n_1, ..., n_N>, each
/// n < D. Amplitudes are stored with mode 0 as the slowest index.
class FockState {
 public:
  FockState(int modes, int truncation, CVec amplitudes);

  static FockState vacuum(int modes, int truncation);
  static FockState number(const std::vector<int>& occupations, int truncation);
  static FockState coherent(const CVec& alpha, int truncation);
  /// S(z)|0> on `mode`, same convention as GaussianState::squeezed.
  static FockState squeezed(int modes, int mode, double r, double phi, int truncation);
  /// (1/cosh r) sum_n tanh(r)^n |n, n>, two modes.
  static FockState two_mode_squeezed(double r, int truncation);
  /// Even cat (|alpha> + |-alpha>) / norm on `mode`, other modes in vacuum.
  static FockState cat(int modes, int mode, cplx alpha, int truncation);

  int modes() const { return modes_; }
  int truncation() const { return dim_; }
  const CVec& amplitudes() const { return amp_; }
  CVec& amplitudes() { return amp_; }

  double norm() const { return amp_.norm(); }
  /// Population missing from the truncated basis when the state was built.
  double leakage() const { return leakage_; }
  /// Largest population on the top level n = D - 1 of any single mode.
  double boundary_population() const;

 private:
  int modes_;
  int dim_;
  CVec amp_;
  double leakage_ = 0.0;

  // Normalizes raw amplitudes whose untruncated squared norm is full_norm_sq.
  static FockState normalized(int modes, int truncation, CVec raw, double full_norm_sq);
};

/// Convex mixture of pure Fock states; weights sum to one.
struct FockEnsemble {
  std::vector<double> weights;
  std::vector<FockState> states;

  static FockEnsemble pure(FockState s);
  /// Product of local thermal states with occupations nbar.
  static FockEnsemble thermal(const Vec& nbar, int truncation, double cutoff = 1e-14);

  int modes() const { return states.front().modes(); }
  int truncation() const { return states.front().truncation(); }
  CMat density_matrix() const;
};

/// <m| D(xi) |n> for 0 <= m, n < D from associated Laguerre polynomials.
CMat displacement_matrix(int truncation, cplx xi);

/// tr{rho D(xi)} in the truncated basis.
cplx chi_fock(const FockState& state, const CVec& xi);
cplx chi_fock(const FockEnsemble& state, const CVec& xi);

using SpMat = Eigen::SparseMatrix<cplx>;

/// Local-basis H0 and the probe quadrature a_p + a_p^+ in the truncated basis.
SpMat fock_hamiltonian(const NetworkSpec& spec, int truncation);
SpMat fock_probe_quadrature(int modes, int probe, int truncation);
/// Annihilation operator of `mode`.
SpMat fock_annihilation(int modes, int mode, int truncation);

struct OracleOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double leak_tol = 1e-6;
  int probe = 0;
};

/// Integrates the Schroedinger equation for H0 + g(s) sigma_3 (a_p + a_p^+)
/// with the qubit prepared in |+>, and returns <sigma_1>, <sigma_2> at t.
/// Only the network Hamiltonian in `spec` and the waveform of `profile` are
/// used. Throws TruncationLeak if the top Fock level gets populated beyond
/// opts.leak_tol.
QubitExpectation brute_force_evolve(const FockEnsemble& initial, const CouplingProfile& profile,
                                    const NetworkSpec& spec, double t,
                                    const OracleOptions& opts = {});

}  // namespace oscnet
