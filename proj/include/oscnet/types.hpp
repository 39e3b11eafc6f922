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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace oscnet {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};

/// Phase-space coordinates are given either for the local oscillators a_n or
/// for the normal modes b_k.
enum class Basis { local, normal };

std::string_view to_string(Basis basis);
Basis parse_basis(std::string_view name);

// Error hierarchy. Every failure raised by the library derives from Error so
// callers can catch a single type; the concrete class names the condition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept { return "Error"; }
};

#define OSCNET_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                              \
   public:                                                                 \
    using Error::Error;                                                    \
    std::string_view kind() const noexcept override { return #Name; }      \
  }

OSCNET_DEFINE_ERROR(InvalidArgument);
OSCNET_DEFINE_ERROR(UnstableNetwork);
OSCNET_DEFINE_ERROR(UnstableChain);
OSCNET_DEFINE_ERROR(DegenerateSpectrum);
OSCNET_DEFINE_ERROR(AssumptionViolation);
OSCNET_DEFINE_ERROR(IllConditioned);
OSCNET_DEFINE_ERROR(SymmetryBreak);
OSCNET_DEFINE_ERROR(NonPhysicalChi);
OSCNET_DEFINE_ERROR(TruncationLeak);
OSCNET_DEFINE_ERROR(RankDeficient);
OSCNET_DEFINE_ERROR(InsufficientClosure);
OSCNET_DEFINE_ERROR(ConfigError);

#undef OSCNET_DEFINE_ERROR

}  // namespace oscnet
