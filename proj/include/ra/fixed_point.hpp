// Copyright 2026 The rangearith Authors.
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

#include <cmath>
#include <cstdint>

#include "ra/field.hpp"

namespace ra {

/// Fixed-point layout: one sign bit, `t` integer bits, `s` fractional bits.
/// A real q is carried as the field element q * 2^s.
struct FixedPointParams {
  int s = 8;
  int t = 6;

  /// Throws unless s >= 1, t >= 0 and 2(t+s)+2 < bit length of F's modulus.
  template <class F>
  void validate() const {
    if (s < 1) throw FieldError("fixed point: s must be >= 1");
    if (t < 0) throw FieldError("fixed point: t must be >= 0");
    if (2 * (t + s) + 2 >= F::kBits) throw FieldError("fixed point: modulus too small for (t, s)");
  }

  friend bool operator==(const FixedPointParams&, const FixedPointParams&) = default;
};

template <class F>
SignedInt to_symmetric(const F& x) {
  return x.to_symmetric();
}

/// Encodes q as q * 2^s. q must be exactly representable (q * 2^s integral)
/// and |q| < 2^{t+1}.
template <class F>
F encode_fixed(double q, const FixedPointParams& params) {
  params.validate<F>();
  if (!std::isfinite(q)) throw FieldError("fixed point: non-finite value");
  if (std::fabs(q) >= std::ldexp(1.0, params.t + 1)) throw FieldError("fixed point: magnitude overflow");
  const double scaled = std::ldexp(q, params.s);
  if (scaled != std::floor(scaled)) throw FieldError("fixed point: value not a multiple of 2^-s");
  return F(static_cast<int64_t>(scaled));
}

template <class F>
double decode_fixed(const F& x, const FixedPointParams& params) {
  auto v = x.symmetric_i64();
  if (!v) throw FieldError("fixed point: value out of decodable range");
  return std::ldexp(static_cast<double>(*v), -params.s);
}

/// Rounds off the low s bits: floor((sym(x) + 2^{s-1}) / 2^s), so ties go
/// toward +infinity. Throws when |sym(x)| + 2^{s-1} reaches (p-1)/2.
template <class F>
F round_fixed(const F& x, const FixedPointParams& params) {
  if (params.s < 1) throw FieldError("fixed point: s must be >= 1");
  const SignedInt sym = x.to_symmetric();
  const SignedInt half = SignedInt(1) << (params.s - 1);
  const SignedInt bound = (F::modulus() - 1) / 2;
  if (boost::multiprecision::abs(sym) + half >= bound) throw FieldError("rounding precondition violated: value would wrap");
  const SignedInt y = sym + half;
  const SignedInt unit = SignedInt(1) << params.s;
  // Floor division; cpp_int divides toward zero.
  SignedInt q = y / unit;
  if (y < 0 && q * unit != y) q -= 1;
  return F::from_signed(q);
}

/// The discarded part x - 2^s * round(x), always in [-2^{s-1}, 2^{s-1}).
template <class F>
F rounding_residual(const F& x, const FixedPointParams& params) {
  return x - F(int64_t(1) << params.s) * round_fixed(x, params);
}

}  // namespace ra
