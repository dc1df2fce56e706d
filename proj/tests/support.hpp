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

#include <cstdint>
#include <random>
#include <vector>

#include "ra/field.hpp"
#include "ra/group.hpp"

namespace ra::testing {

/// Prime field of order 131, small enough to enumerate.
struct Mod131 {
  static constexpr Limbs kValue = {131, 0, 0, 0};
};
using F131 = Fp<Mod131>;

template <class F = Scalar>
F random_element(std::mt19937_64& rng) {
  return F::from_limbs_reduce({rng(), rng(), rng(), rng()});
}

template <class F = Scalar>
Vector<F> random_vector(std::mt19937_64& rng, std::size_t n) {
  Vector<F> v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = random_element<F>(rng);
  return v;
}

/// Uniform integers in [lo, hi] as field elements.
inline ScalarVector random_ints(std::mt19937_64& rng, std::size_t n, int64_t lo, int64_t hi) {
  std::uniform_int_distribution<int64_t> dist(lo, hi);
  ScalarVector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = Scalar(dist(rng));
  return v;
}

inline std::span<const Scalar> as_span(const ScalarVector& v) { return {v.data(), std::size_t(v.size())}; }

/// Shared generators; derivation is the slow part of most fixtures.
inline const GeneratorSet& shared_generators() {
  static const GeneratorSet gens = derive_generators("rangearith/tests", 4096);
  return gens;
}

}  // namespace ra::testing
