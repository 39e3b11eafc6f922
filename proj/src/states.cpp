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

#include "oscnet/states.hpp"

#include <cmath>

namespace oscnet {

namespace {

TestState from_gaussian(std::string name, GaussianState g) {
  TestState s;
  s.name = std::move(name);
  s.modes = g.modes();
  s.chi = [g](const CVec& xi) { return chi_gaussian(g, xi); };
  s.gaussian = std::move(g);
  return s;
}

void check_mode(int mode, int modes) {
  if (mode < 0 || mode >= modes) throw InvalidArgument("state mode index out of range");
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"vacuum",   "coherent",          "thermal",
                                                 "squeezed", "two_mode_squeezed", "cat"};
  return names;
}

TestState make_state(const StateParams& p, int modes, const NormalModeDecomposition* decomp) {
  if (modes < 1) throw InvalidArgument("state needs at least one mode");
  const bool small = modes <= 2;
  if (p.name == "vacuum") {
    auto s = from_gaussian("vacuum", GaussianState::vacuum(modes));
    if (small) s.fock = [modes](int D) { return FockEnsemble::pure(FockState::vacuum(modes, D)); };
    return s;
  }
  if (p.name == "coherent") {
    if (p.alpha.size() != modes) throw InvalidArgument("coherent state needs one amplitude per mode");
    auto s = from_gaussian("coherent", GaussianState::coherent(p.alpha));
    if (small) {
      s.fock = [alpha = p.alpha](int D) { return FockEnsemble::pure(FockState::coherent(alpha, D)); };
    }
    return s;
  }
  if (p.name == "thermal") {
    if (p.nbar.size() > 0) {
      if (p.nbar.size() != modes) throw InvalidArgument("thermal state needs one occupation per mode");
      auto s = from_gaussian("thermal", GaussianState::thermal(p.nbar));
      if (small) s.fock = [nbar = p.nbar](int D) { return FockEnsemble::thermal(nbar, D); };
      return s;
    }
    if (decomp == nullptr) throw InvalidArgument("network thermal state needs the decomposition");
    if (!(p.T >= 0.0)) throw InvalidArgument("temperature must be non-negative");
    if (decomp->modes() != modes) throw InvalidArgument("decomposition mode count mismatch");
    return from_gaussian("thermal", GaussianState::network_thermal(*decomp, p.T));
  }
  if (p.name == "squeezed") {
    check_mode(p.mode, modes);
    auto s = from_gaussian("squeezed", GaussianState::squeezed(modes, p.mode, p.r, p.phi));
    if (small) {
      s.fock = [=](int D) { return FockEnsemble::pure(FockState::squeezed(modes, p.mode, p.r, p.phi, D)); };
    }
    return s;
  }
  if (p.name == "two_mode_squeezed") {
    check_mode(p.mode, modes);
    check_mode(p.mode2, modes);
    auto s = from_gaussian("two_mode_squeezed",
                           GaussianState::two_mode_squeezed(modes, p.mode, p.mode2, p.r));
    if (modes == 2) {
      s.fock = [r = p.r](int D) { return FockEnsemble::pure(FockState::two_mode_squeezed(r, D)); };
    }
    return s;
  }
  if (p.name == "cat") {
    check_mode(p.mode, modes);
    if (p.alpha.size() < 1) throw InvalidArgument("cat state needs an amplitude");
    const cplx a = p.alpha[0];
    const FockState single = FockState::cat(1, 0, a, p.truncation);
    if (single.leakage() > 1e-10) {
      throw InvalidArgument("cat truncation too small for amplitude " + std::to_string(std::abs(a)));
    }
    TestState s;
    s.name = "cat";
    s.modes = modes;
    const int mode = p.mode;
    s.chi = [single, mode](const CVec& xi) {
      if (xi.size() <= mode) throw InvalidArgument("xi length does not match mode count");
      cplx value = chi_fock(single, CVec::Constant(1, xi[mode]));
      for (Eigen::Index j = 0; j < xi.size(); ++j) {
        if (j != mode) value *= std::exp(-0.5 * std::norm(xi[j]));
      }
      return value;
    };
    if (small) s.fock = [=](int D) { return FockEnsemble::pure(FockState::cat(modes, mode, a, D)); };
    return s;
  }
  throw InvalidArgument("unknown catalog state '" + p.name + "'");
}

ChiFunction normal_basis_chi(const TestState& state, const NormalModeDecomposition& decomp) {
  if (decomp.modes() != state.modes) throw InvalidArgument("decomposition mode count mismatch");
  return [chi = state.chi, decomp](const CVec& eta) {
    return chi(local_normal_convert(decomp, eta, Direction::normal_to_local));
  };
}

}  // namespace oscnet
