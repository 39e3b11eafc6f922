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

#include "oscnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace oscnet {

std::string_view to_string(Basis basis) {
  return basis == Basis::local ? "local" : "normal";
}

Basis parse_basis(std::string_view name) {
  if (name == "local") return Basis::local;
  if (name == "normal") return Basis::normal;
  throw InvalidArgument("unknown basis '" + std::string(name) + "'");
}

NetworkSpec::NetworkSpec(Vec omega_, Mat J_, Mat K_)
    : omega(std::move(omega_)), J(std::move(J_)), K(std::move(K_)) {
  validate();
}

NetworkSpec NetworkSpec::uncoupled(const Vec& omega) {
  const auto n = omega.size();
  return NetworkSpec(omega, Mat::Zero(n, n), Mat::Zero(n, n));
}

void NetworkSpec::validate() const {
  const auto n = omega.size();
  if (n < 1) throw InvalidArgument("network needs at least one oscillator");
  if (J.rows() != n || J.cols() != n || K.rows() != n || K.cols() != n) {
    throw InvalidArgument("coupling matrices must be N x N");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(omega[i] > 0.0) || !std::isfinite(omega[i])) {
      throw InvalidArgument("local frequencies must be positive and finite");
    }
    if (J(i, i) != 0.0 || K(i, i) != 0.0) {
      throw InvalidArgument("coupling matrices must have zero diagonal");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (J(i, j) != J(j, i) || K(i, j) != K(j, i)) {
        throw InvalidArgument("coupling matrices must be symmetric");
      }
    }
  }
  if (!J.allFinite() || !K.allFinite()) throw InvalidArgument("non-finite coupling");
}

CMat NormalModeDecomposition::symplectic() const {
  const int n = modes();
  CMat S(2 * n, 2 * n);
  S << S1, S2, S2.conjugate(), S1.conjugate();
  return S;
}

CMat build_quadratic_form(const NetworkSpec& spec) {
  spec.validate();
  const int n = spec.modes();
  CMat h = spec.J.cast<cplx>();
  h.diagonal() = spec.omega.cast<cplx>();
  const CMat k = spec.K.cast<cplx>();
  CMat H(2 * n, 2 * n);
  H << h, k, k.conjugate(), h.conjugate();
  return H;
}

CVec probe_couplings(const CMat& S1, const CMat& S2, int probe) {
  return (S1.col(probe) - S2.col(probe)).conjugate();
}

void fix_gauge(NormalModeDecomposition& d, double g_tol) {
  for (int k = 0; k < d.modes(); ++k) {
    cplx phase;
    if (std::abs(d.G[k]) > g_tol) {
      phase = std::conj(d.G[k]) / std::abs(d.G[k]);
    } else {
      Eigen::Index col = 0;
      d.S1.row(k).cwiseAbs().maxCoeff(&col);
      const cplx lead = d.S1(k, col);
      phase = std::abs(lead) > 0.0 ? std::conj(lead) / std::abs(lead) : cplx{1.0, 0.0};
    }
    // b_k -> phase * b_k rotates row k of S1 and S2 and multiplies G_k by phase.
    d.S1.row(k) *= phase;
    d.S2.row(k) *= phase;
  }
  d.G = probe_couplings(d.S1, d.S2, d.probe);
  for (int k = 0; k < d.modes(); ++k) {
    if (std::abs(d.G[k]) > g_tol) d.G[k] = {std::abs(d.G[k]), 0.0};
  }
}

namespace {

std::string describe_spectrum(const CMat& H, int n) {
  CMat dyn = H;
  dyn.bottomRows(n) *= -1.0;
  Eigen::ComplexEigenSolver<CMat> es(dyn, false);
  std::ostringstream os;
  os << "eigenvalues of Sigma*H_qf:";
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) os << ' ' << es.eigenvalues()[i];
  return os.str();
}

}  // namespace

NormalModeDecomposition diagonalize(const NetworkSpec& spec, int probe) {
  const int n = spec.modes();
  if (probe < 0 || probe >= n) throw InvalidArgument("probe index out of range");
  const CMat H = build_quadratic_form(spec);

  // A stable quadratic Hamiltonian has a positive-definite H_qf. With
  // H = L L^+, the Hermitian matrix L^+ Sigma L shares its spectrum (+-nu)
  // with the dynamical matrix Sigma H, and its orthonormal eigenvectors map
  // onto a Sigma-orthogonal set of Bogoliubov vectors even in degenerate
  // subspaces.
  Eigen::LLT<CMat> llt(H);
  if (llt.info() != Eigen::Success) {
    throw UnstableNetwork("network Hamiltonian is not positive definite; " +
                          describe_spectrum(H, n));
  }
  const CMat L = llt.matrixL();
  CMat A = L.adjoint();
  A.rightCols(n) *= -1.0;  // L^+ Sigma
  A = A * L;
  A = 0.5 * (A + A.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(A);
  const Vec& ev = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    if (!(ev[n + i] > 0.0) || !(ev[i] < 0.0)) {
      throw UnstableNetwork("normal-mode spectrum is not split into +-nu pairs; " +
                            describe_spectrum(H, n));
    }
  }

  NormalModeDecomposition d;
  d.probe = probe;
  d.nu = ev.tail(n);
  CMat U(n, n), W(n, n);
  const auto upper = llt.matrixU();
  for (int k = 0; k < n; ++k) {
    // v = sqrt(nu) L^{-+} y has symplectic norm v^+ Sigma v = 1.
    CVec v = upper.solve(es.eigenvectors().col(n + k));
    v *= std::sqrt(d.nu[k]);
    U.col(k) = v.head(n);
    W.col(k) = v.tail(n);
  }
  // a = U b + W^* b^+  =>  b = U^+ a - W^+ a^+.
  d.S1 = U.adjoint();
  d.S2 = -W.adjoint();
  d.G = probe_couplings(d.S1, d.S2, probe);
  fix_gauge(d);
  return d;
}

SymplecticResidual verify_symplectic(const NormalModeDecomposition& d) {
  const int n = d.modes();
  const CMat norm = d.S1.adjoint() * d.S1 - (d.S2.adjoint() * d.S2).conjugate() -
                    CMat::Identity(n, n);
  const CMat sym = d.S1.adjoint() * d.S2 - (d.S2.adjoint() * d.S1).conjugate();
  return {norm.cwiseAbs().maxCoeff(), sym.cwiseAbs().maxCoeff()};
}

std::pair<double, double> diagonal_form_residual(const NetworkSpec& spec,
                                                 const NormalModeDecomposition& d) {
  const int n = d.modes();
  const CMat S = d.symplectic();
  // S^{-1} = Sigma S^+ Sigma
  CMat T = S.adjoint();
  T.bottomRows(n) *= -1.0;
  T.rightCols(n) *= -1.0;
  const CMat D = T.adjoint() * build_quadratic_form(spec) * T;
  double off = 0.0;
  double diag = 0.0;
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      if (i == j) {
        diag = std::max(diag, std::abs(D(i, i) - d.nu[i % n]));
      } else {
        off = std::max(off, std::abs(D(i, j)));
      }
    }
  }
  return {off, diag};
}

AssumptionReport check_assumptions(const NormalModeDecomposition& d,
                                   const AssumptionTolerances& tol) {
  if (!(tol.g_tol > 0.0) || !(tol.gap_tol > 0.0)) {
    throw InvalidArgument("assumption tolerances must be positive");
  }
  AssumptionReport r;
  const int n = d.modes();
  r.min_abs_G = d.G.cwiseAbs().minCoeff();
  for (int k = 0; k < n; ++k) {
    if (std::abs(d.G[k]) <= tol.g_tol) {
      r.a1 = false;
      r.weak_modes.push_back(k);
    }
  }
  r.min_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double gap = std::abs(d.nu[j] - d.nu[k]);
      r.min_gap = std::min(r.min_gap, gap);
      if (gap <= tol.gap_tol) {
        r.a2 = false;
        r.degenerate_pairs.emplace_back(j, k);
      }
    }
  }
  r.near_degenerate = r.a2 && r.min_gap < tol.warn_gap;
  return r;
}

CVec local_normal_convert(const NormalModeDecomposition& d, const CVec& vec,
                          Direction direction) {
  if (vec.size() != d.modes()) throw InvalidArgument("vector length does not match mode count");
  if (direction == Direction::normal_to_local) {
    // alpha = S1^+ beta - S2^T beta^*
    return d.S1.adjoint() * vec - d.S2.transpose() * vec.conjugate();
  }
  // beta = S1 alpha + S2 alpha^*
  return d.S1 * vec + d.S2 * vec.conjugate();
}

Mat quadrature_symplectic(const NormalModeDecomposition& d) {
  const int n = d.modes();
  const CMat P = d.S1 + d.S2;
  const CMat Q = d.S1 - d.S2;
  Mat R(2 * n, 2 * n);
  R << P.real(), -Q.imag(), P.imag(), Q.real();
  return R;
}

}  // namespace oscnet
