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

// Openings of a commitment P1 = <table, g> to the multilinear extension of
// `table` at a point z, via one inner-product argument with b = chi(z).

struct OpeningProof {
  Scalar value;
  IpaProof ipa;

  std::size_t byte_size() const { return kScalarBytes + ipa.byte_size(); }
  void write(ByteWriter& w) const;
  static OpeningProof read(ByteReader& r);
};

/// Proves table~(z) using g[0..2^v) and h[0..2^v), v = |z|. The caller binds
/// the commitment to the transcript.
OpeningProof pc_open(const GeneratorSet& gens, const ScalarVector& table, std::span<const Scalar> z, Transcript& tr);

/// On acceptance, proof.value is the evaluation of the committed table at z.
Verdict pc_verify(const GeneratorSet& gens, const MultiExp& commitment, std::span<const Scalar> z,
                  const OpeningProof& proof, Transcript& tr);

}  // namespace ra
