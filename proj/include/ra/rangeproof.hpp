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

#include <cstddef>
#include <span>

#include "ra/field.hpp"
#include "ra/group.hpp"
#include "ra/ipa.hpp"
#include "ra/transcript.hpp"
#include "ra/verdict.hpp"
#include "ra/wire.hpp"

namespace ra {

// Aggregated range proof that every committed value v_j lies in [0, 2^n).
// P = <v, g[0..m)> is the instance; bits live on g[0..N), h[0..N).

/// Sizes of one instance. Values are padded with zeros to a power of two and
/// the bit vector to a power of two; padding bits must be zero bits.
struct RangeShape {
  std::size_t values = 0;
  std::size_t bits = 0;

  std::size_t padded_values() const;
  /// Length N of the bit vectors a_L and a_R.
  std::size_t length() const;
};

struct RangeProof {
  GroupElement bit_commitment;  // A = <a_L, g> + <a_R, h>
  Scalar qz;                    // <z^m, v>
  IpaProof ipa_q;
  IpaProof ipa_lr;

  std::size_t byte_size() const { return kPointBytes + kScalarBytes + ipa_q.byte_size() + ipa_lr.byte_size(); }
  void write(ByteWriter& w) const;
  static RangeProof read(ByteReader& r);
};

/// Throws ProofError when some value is outside [0, 2^bits). The caller binds
/// the commitment to the transcript.
RangeProof rp_prove(const GeneratorSet& gens, std::span<const Scalar> values, std::size_t bits, Transcript& tr);

Verdict rp_verify(const GeneratorSet& gens, const MultiExp& commitment, const RangeShape& shape, const RangeProof& proof,
                  Transcript& tr);

/// Little-endian bit vector of the padded instance: bit k of value j at
/// index j * bits + k. Throws ProofError on out-of-range values.
ScalarVector range_bits(std::span<const Scalar> values, std::size_t bits);

/// delta(y, z) = (z - z^2) <1, y^N> - sum_j z^{j+2} <1, 2^n> over the padded values.
Scalar range_delta(const RangeShape& shape, const Scalar& y, const Scalar& z);

namespace detail {

/// Runs the prover with caller-chosen a_L and a_R and no consistency checks;
/// used to model cheating provers.
RangeProof rp_prove_unchecked(const GeneratorSet& gens, std::span<const Scalar> values, std::size_t bits,
                              const ScalarVector& a_left, const ScalarVector& a_right, Transcript& tr);

}  // namespace detail
}  // namespace ra
