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

#include "oscnet/integrals.hpp"

#include <cmath>

namespace oscnet::detail {

cplx expm1(cplx z) {
  const double a = z.real();
  const double b = z.imag();
  const double half_sin = std::sin(0.5 * b);
  // e^a cos b - 1 = expm1(a) cos b - 2 sin^2(b/2)
  const double re = std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin;
  const double im = std::exp(a) * std::sin(b);
  return {re, im};
}

cplx exp_integral(cplx z, double t) {
  const cplx zt = z * t;
  if (std::abs(zt) < 1e-5) {
    // t (1 + zt/2 + (zt)^2/6 + (zt)^3/24)
    return t * (1.0 + zt * (0.5 + zt * (1.0 / 6.0 + zt / 24.0)));
  }
  return expm1(zt) / z;
}

cplx sinh_weighted_integral(double w, double b, double s) {
  if (s <= 0.0) return {0.0, 0.0};
  const double bs = b * s;
  const cplx c{0.0, w};
  const double cs = std::abs(w) * s;

  if (w == 0.0) {
    if (bs < 1e-8) return s / 2.0;
    return std::tanh(0.5 * bs) / b;
  }
  if (cs < 1e-4 && bs < 1e-4) {
    return s / 2.0 + c * s * s / 3.0 + c * c * s * s * s / 8.0 - b * b * s * s * s / 24.0;
  }

  const double ratio = bs < 1e-8 ? 1.0 / s : b / std::sinh(bs);
  const double half_sinh = std::sinh(0.5 * bs);
  const double cosh_m1 = 2.0 * half_sinh * half_sinh;
  const cplx ecs = std::exp(c * s);
  // e^{cs} cosh(bs) - 1 = expm1(cs) cosh(bs) + (cosh(bs) - 1)
  const cplx shifted = expm1(c * s) * std::cosh(bs) + cosh_m1;
  return (c * ecs - ratio * shifted) / (c * c - b * b);
}

}  // namespace oscnet::detail
