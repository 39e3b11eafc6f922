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

#include "oscnet/types.hpp"

// Closed-form integrals of exponentials shared by the protocol, decoherence
// and noise modules. All of them stay accurate through their removable
// singularities.
namespace oscnet::detail {

/// e^z - 1 without cancellation for small |z|.
cplx expm1(cplx z);

/// \int_0^t e^{z s} ds.
cplx exp_integral(cplx z, double t);

/// \int_0^s e^{i w u} sinh(b u) du / sinh(b s), b >= 0.
/// Reduces to (1/s) \int_0^s u e^{i w u} du when b -> 0.
cplx sinh_weighted_integral(double w, double b, double s);

}  // namespace oscnet::detail
