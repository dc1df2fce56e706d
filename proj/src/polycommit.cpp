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

#include "ra/polycommit.hpp"

#include <string>

#include "ra/mle.hpp"

namespace ra {

void OpeningProof::write(ByteWriter& w) const {
  w.scalar(value);
  ipa.write(w);
}

OpeningProof OpeningProof::read(ByteReader& r) {
  OpeningProof p;
  p.value = r.scalar();
  p.ipa = IpaProof::read(r);
  return p;
}

OpeningProof pc_open(const GeneratorSet& gens, const ScalarVector& table, std::span<const Scalar> z, Transcript& tr) {
  const std::size_t n = std::size_t(1) << z.size();
  if (std::size_t(table.size()) != n) {
    throw DimensionError("pc_open: table has " + std::to_string(table.size()) + " entries for " +
                         std::to_string(z.size()) + " variables");
  }
  if (gens.tau() < n) throw DimensionError("pc_open: generator set too small");
  ScalarVector chi = chi_vector<Scalar>(z);
  OpeningProof proof;
  proof.value = inner_product(table, chi);
  tr.absorb_scalar("pc/value", proof.value);
  const IpaBases bases{gens.g_slice(n), gens.h_slice(n), gens.u};
  proof.ipa = ipa_prove(bases, table, std::move(chi), proof.value, tr);
  return proof;
}

Verdict pc_verify(const GeneratorSet& gens, const MultiExp& commitment, std::span<const Scalar> z,
                  const OpeningProof& proof, Transcript& tr) {
  const std::size_t n = std::size_t(1) << z.size();
  if (gens.tau() < n) return Verdict::reject("generator set too small");
  tr.absorb_scalar("pc/value", proof.value);
  // P = P1 + <chi(z), h>.
  IpaStatement statement{{}, chi_vector<Scalar>(z), commitment};
  const IpaBases bases{gens.g_slice(n), gens.h_slice(n), gens.u};
  if (!ipa_verify(bases, statement, proof.value, n, proof.ipa, tr)) return Verdict::reject("inner-product check failed");
  return Verdict::accept();
}

}  // namespace ra
