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

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ra/field.hpp"
#include "ra/group.hpp"
#include "ra/transcript.hpp"
#include "ra/wire.hpp"

namespace ra {

class ProofError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bases for one inner-product instance. The effective i-th h base is
/// h_ratio^i * h[i]; a ratio of one gives plain h.
struct IpaBases {
  std::span<const AffinePoint> g;
  std::span<const AffinePoint> h;
  AffinePoint u;
  Scalar h_ratio = Scalar::one();
};

/// P = <g_coeffs, g> + <h_coeffs, h_eff> + extra. Either coefficient vector
/// may be empty (all zero).
struct IpaStatement {
  ScalarVector g_coeffs;
  ScalarVector h_coeffs;
  MultiExp extra;
};

struct IpaProof {
  std::vector<std::pair<GroupElement, GroupElement>> folds;  // (L, R) per round
  Scalar a;
  Scalar b;

  std::size_t group_elements() const { return 2 * folds.size(); }
  std::size_t scalars() const { return 2; }
  std::size_t byte_size() const { return group_elements() * kPointBytes + scalars() * kScalarBytes; }

  void write(ByteWriter& w) const;
  static IpaProof read(ByteReader& r);
};

/// Proves P = <a, g> + <b, h_eff> with c = <a, b>. The caller binds P and c to
/// the transcript beforehand. n = |a| must be a power of two and no larger
/// than the base slices.
IpaProof ipa_prove(const IpaBases& bases, ScalarVector a, ScalarVector b, const Scalar& c, Transcript& tr);

bool ipa_verify(const IpaBases& bases, const IpaStatement& statement, const Scalar& c, std::size_t n,
                const IpaProof& proof, Transcript& tr);

}  // namespace ra
