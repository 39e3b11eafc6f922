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

#include "oscnet/fock.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/laguerre.hpp>
#include <boost/numeric/odeint.hpp>

namespace oscnet {

namespace {

constexpr int kMaxOracleModes = 2;

Eigen::Index basis_size(int modes, int dim) {
  Eigen::Index n = 1;
  for (int j = 0; j < modes; ++j) n *= dim;
  return n;
}

void check_shape(int modes, int dim) {
  if (modes < 1 || modes > kMaxOracleModes) {
    throw InvalidArgument("Fock oracle supports 1 or 2 modes");
  }
  if (dim < 2) throw InvalidArgument("Fock truncation must be at least 2");
}

CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

// Single-mode coherent amplitudes, unnormalized by truncation.
CVec coherent_amplitudes(cplx alpha, int dim) {
  CVec c(dim);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

// Embeds a single-mode vector on `mode` with every other mode in vacuum.
CVec embed_single(int modes, int mode, const CVec& single) {
  const int dim = static_cast<int>(single.size());
  CVec vac = CVec::Zero(dim);
  vac[0] = 1.0;
  CVec out = (mode == 0) ? single : vac;
  for (int j = 1; j < modes; ++j) out = kron(out, j == mode ? single : vac);
  return out;
}

double top_level_population(const CVec& amp, int modes, int dim) {
  double worst = 0.0;
  for (int mode = 0; mode < modes; ++mode) {
    Eigen::Index stride = 1;
    for (int j = mode + 1; j < modes; ++j) stride *= dim;
    double pop = 0.0;
    for (Eigen::Index i = 0; i < amp.size(); ++i) {
      if ((i / stride) % dim == dim - 1) pop += std::norm(amp[i]);
    }
    worst = std::max(worst, pop);
  }
  return worst;
}

SpMat single_lowering(int dim) {
  SpMat a(dim, dim);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int n = 1; n < dim; ++n) trip.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

SpMat sparse_identity(int dim) {
  SpMat id(dim, dim);
  id.setIdentity();
  return id;
}

SpMat sparse_kron(const SpMat& a, const SpMat& b) {
  SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SpMat::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SpMat::InnerIterator ib(b, kb); ib; ++ib) {
          trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                            ia.value() * ib.value());
        }
      }
    }
  }
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

FockState::FockState(int modes, int truncation, CVec amplitudes)
    : modes_(modes), dim_(truncation), amp_(std::move(amplitudes)) {
  check_shape(modes, truncation);
  if (amp_.size() != basis_size(modes, truncation)) {
    throw InvalidArgument("amplitude vector does not match D^N");
  }
  const double n = amp_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("Fock state has zero or invalid norm");
  if (std::abs(n - 1.0) > 1e-12) amp_ /= n;
}

FockState FockState::normalized(int modes, int truncation, CVec raw, double full_norm_sq) {
  const double kept = raw.squaredNorm();
  FockState s(modes, truncation, std::move(raw));
  s.leakage_ = std::max(0.0, 1.0 - kept / full_norm_sq);
  return s;
}

FockState FockState::vacuum(int modes, int truncation) {
  check_shape(modes, truncation);
  CVec amp = CVec::Zero(basis_size(modes, truncation));
  amp[0] = 1.0;
  return FockState(modes, truncation, amp);
}

FockState FockState::number(const std::vector<int>& occupations, int truncation) {
  const int modes = static_cast<int>(occupations.size());
  check_shape(modes, truncation);
  Eigen::Index idx = 0;
  for (int n : occupations) {
    if (n < 0 || n >= truncation) throw InvalidArgument("occupation outside the truncated basis");
    idx = idx * truncation + n;
  }
  CVec amp = CVec::Zero(basis_size(modes, truncation));
  amp[idx] = 1.0;
  return FockState(modes, truncation, amp);
}

FockState FockState::coherent(const CVec& alpha, int truncation) {
  const int modes = static_cast<int>(alpha.size());
  check_shape(modes, truncation);
  CVec amp = coherent_amplitudes(alpha[0], truncation);
  for (int j = 1; j < modes; ++j) amp = kron(amp, coherent_amplitudes(alpha[j], truncation));
  return normalized(modes, truncation, amp, 1.0);
}

FockState FockState::squeezed(int modes, int mode, double r, double phi, int truncation) {
  check_shape(modes, truncation);
  if (mode < 0 || mode >= modes) throw InvalidArgument("mode index out of range");
  CVec c = CVec::Zero(truncation);
  const cplx ratio = -std::polar(std::tanh(r), phi);
  c[0] = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 2; n < truncation; n += 2) {
    c[n] = c[n - 2] * ratio * std::sqrt(static_cast<double>(n) * (n - 1)) / static_cast<double>(n);
  }
  return normalized(modes, truncation, embed_single(modes, mode, c), 1.0);
}

FockState FockState::two_mode_squeezed(double r, int truncation) {
  check_shape(2, truncation);
  CVec amp = CVec::Zero(basis_size(2, truncation));
  const double th = std::tanh(r);
  double c = 1.0 / std::cosh(r);
  for (int n = 0; n < truncation; ++n) {
    amp[static_cast<Eigen::Index>(n) * truncation + n] = c;
    c *= th;
  }
  return normalized(2, truncation, amp, 1.0);
}

FockState FockState::cat(int modes, int mode, cplx alpha, int truncation) {
  check_shape(modes, truncation);
  if (mode < 0 || mode >= modes) throw InvalidArgument("mode index out of range");
  if (alpha == cplx{}) throw InvalidArgument("cat amplitude must be nonzero");
  const CVec c = coherent_amplitudes(alpha, truncation) + coherent_amplitudes(-alpha, truncation);
  const double full = 2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha)));
  return normalized(modes, truncation, embed_single(modes, mode, c), full);
}

double FockState::boundary_population() const { return top_level_population(amp_, modes_, dim_); }

FockEnsemble FockEnsemble::pure(FockState s) { return {{1.0}, {std::move(s)}}; }

FockEnsemble FockEnsemble::thermal(const Vec& nbar, int truncation, double cutoff) {
  const int modes = static_cast<int>(nbar.size());
  check_shape(modes, truncation);
  std::vector<Vec> p(modes, Vec::Zero(truncation));
  for (int j = 0; j < modes; ++j) {
    if (nbar[j] < 0.0) throw InvalidArgument("occupation must be non-negative");
    const double q = nbar[j] / (1.0 + nbar[j]);
    double w = 1.0 / (1.0 + nbar[j]);
    for (int n = 0; n < truncation; ++n, w *= q) p[j][n] = w;
  }
  FockEnsemble e;
  const Eigen::Index total = basis_size(modes, truncation);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    std::vector<int> occ(modes);
    Eigen::Index rest = idx;
    double w = 1.0;
    for (int j = modes - 1; j >= 0; --j) {
      occ[j] = static_cast<int>(rest % truncation);
      rest /= truncation;
      w *= p[j][occ[j]];
    }
    if (w < cutoff) continue;
    e.weights.push_back(w);
    e.states.push_back(FockState::number(occ, truncation));
  }
  double sum = 0.0;
  for (double w : e.weights) sum += w;
  for (double& w : e.weights) w /= sum;
  return e;
}

CMat FockEnsemble::density_matrix() const {
  const auto n = states.front().amplitudes().size();
  CMat rho = CMat::Zero(n, n);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const CVec& a = states[i].amplitudes();
    rho += weights[i] * a * a.adjoint();
  }
  return rho;
}

CMat displacement_matrix(int truncation, cplx xi) {
  const double x = std::norm(xi);
  const double gauss = std::exp(-0.5 * x);
  CMat D(truncation, truncation);
  for (int m = 0; m < truncation; ++m) {
    for (int n = 0; n < truncation; ++n) {
      const int lo = std::min(m, n);
      const int k = std::abs(m - n);
      // <m|D|n> = sqrt(lo!/hi!) z^k e^{-|xi|^2/2} L_lo^{(k)}(|xi|^2), z = xi (m >= n) or -xi^*.
      const cplx z = (m >= n) ? xi : -std::conj(xi);
      cplx zk = 1.0;
      for (int i = 0; i < k; ++i) zk *= z;
      const double ratio = std::exp(0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0)));
      D(m, n) = ratio * zk * gauss * boost::math::laguerre(static_cast<unsigned>(lo),
                                                           static_cast<unsigned>(k), x);
    }
  }
  return D;
}

cplx chi_fock(const FockState& state, const CVec& xi) {
  if (xi.size() != state.modes()) throw InvalidArgument("xi length does not match mode count");
  const int dim = state.truncation();
  CMat op = displacement_matrix(dim, xi[0]);
  for (int j = 1; j < state.modes(); ++j) {
    const CMat dj = displacement_matrix(dim, xi[j]);
    CMat big(op.rows() * dim, op.cols() * dim);
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
      for (Eigen::Index c = 0; c < op.cols(); ++c) big.block(r * dim, c * dim, dim, dim) = op(r, c) * dj;
    }
    op = std::move(big);
  }
  const CVec& a = state.amplitudes();
  return a.dot(op * a);
}

cplx chi_fock(const FockEnsemble& state, const CVec& xi) {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < state.states.size(); ++i) sum += state.weights[i] * chi_fock(state.states[i], xi);
  return sum;
}

SpMat fock_annihilation(int modes, int mode, int truncation) {
  check_shape(modes, truncation);
  if (mode < 0 || mode >= modes) throw InvalidArgument("mode index out of range");
  SpMat op = (mode == 0) ? single_lowering(truncation) : sparse_identity(truncation);
  for (int j = 1; j < modes; ++j) {
    op = sparse_kron(op, j == mode ? single_lowering(truncation) : sparse_identity(truncation));
  }
  return op;
}

SpMat fock_hamiltonian(const NetworkSpec& spec, int truncation) {
  spec.validate();
  const int n = spec.modes();
  std::vector<SpMat> a;
  for (int j = 0; j < n; ++j) a.push_back(fock_annihilation(n, j, truncation));
  const auto dim = a.front().rows();
  SpMat H(dim, dim);
  for (int j = 0; j < n; ++j) H += spec.omega[j] * SpMat(a[j].adjoint() * a[j]);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (spec.J(j, k) != 0.0) {
        H += spec.J(j, k) * SpMat(a[j] * a[k].adjoint() + a[j].adjoint() * a[k]);
      }
      if (spec.K(j, k) != 0.0) {
        H += spec.K(j, k) * SpMat(a[j] * a[k] + a[j].adjoint() * a[k].adjoint());
      }
    }
  }
  H.makeCompressed();
  return H;
}

SpMat fock_probe_quadrature(int modes, int probe, int truncation) {
  const SpMat a = fock_annihilation(modes, probe, truncation);
  SpMat x = a + SpMat(a.adjoint());
  x.makeCompressed();
  return x;
}

QubitExpectation brute_force_evolve(const FockEnsemble& initial, const CouplingProfile& profile,
                                    const NetworkSpec& spec, double t, const OracleOptions& opts) {
  namespace ode = boost::numeric::odeint;
  if (initial.states.empty()) throw InvalidArgument("empty initial ensemble");
  const int modes = initial.modes();
  const int dim = initial.truncation();
  if (spec.modes() != modes) throw InvalidArgument("network and state mode counts differ");
  if (!(t > 0.0)) throw InvalidArgument("evolution time must be positive");

  const SpMat H0 = fock_hamiltonian(spec, dim);
  const SpMat X = fock_probe_quadrature(modes, opts.probe, dim);
  const Eigen::Index n = H0.rows();
  const double fastest = std::max(spec.omega.maxCoeff(), 1e-12);

  using State = std::vector<cplx>;
  // Both qubit branches at once: psi_e in [0, n), psi_g in [n, 2n).
  auto rhs = [&](const State& x, State& dxdt, double s) {
    const double g = evaluate_g(profile, s);
    Eigen::Map<const CVec> e(x.data(), n), gr(x.data() + n, n);
    Eigen::Map<CVec> de(dxdt.data(), n), dg(dxdt.data() + n, n);
    const CVec h0e = H0 * e;
    const CVec h0g = H0 * gr;
    const CVec xe = X * e;
    const CVec xg = X * gr;
    de = -kI * (h0e + g * xe);
    dg = -kI * (h0g - g * xg);
  };

  cplx chi = 0.0;
  double leak = 0.0;  // mixture-weighted bound on the top-level population
  for (std::size_t i = 0; i < initial.states.size(); ++i) {
    const CVec& psi = initial.states[i].amplitudes();
    State x(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = x[n + j] = psi[j];
    double worst = 0.0;
    auto observe = [&](const State& y, double) {
      Eigen::Map<const CVec> e(y.data(), n), gr(y.data() + n, n);
      worst = std::max({worst, top_level_population(e, modes, dim), top_level_population(gr, modes, dim)});
    };
    auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol, ode::runge_kutta_dopri5<State>());
    ode::integrate_adaptive(stepper, rhs, x, 0.0, t, 1e-3 / fastest, observe);
    leak += initial.weights[i] * worst;
    Eigen::Map<const CVec> e(x.data(), n), gr(x.data() + n, n);
    chi += initial.weights[i] * e.dot(gr);
  }
  if (leak > opts.leak_tol) {
    throw TruncationLeak("top Fock level population " + std::to_string(leak) + " exceeds " +
                         std::to_string(opts.leak_tol));
  }
  return {chi.real(), chi.imag()};
}

}  // namespace oscnet
