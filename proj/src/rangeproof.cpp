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

#include "ra/rangeproof.hpp"

#include <string>
#include <utility>

#include "ra/mle.hpp"

namespace ra {
namespace {

constexpr std::size_t kMaxBits = 64;

void check_shape(const RangeShape& shape) {
  if (shape.values == 0) throw DimensionError("range proof: no values");
  if (shape.bits == 0 || shape.bits > kMaxBits) throw DimensionError("range proof: unsupported bit width");
}

ScalarVector padded(std::span<const Scalar> values, std::size_t count) {
  ScalarVector out = ScalarVector::Constant(Eigen::Index(count), Scalar());
  for (std::size_t j = 0; j < values.size(); ++j) out[Eigen::Index(j)] = values[j];
  return out;
}

// Weight of position i inside r: z^{2+j} 2^k for bit k of value j, zero on
// padding bits.
ScalarVector bit_weights(const RangeShape& shape, const Scalar& z) {
  const std::size_t m = shape.padded_values();
  ScalarVector w = ScalarVector::Constant(Eigen::Index(shape.length()), Scalar());
  const ScalarVector two = powers(Scalar(2), shape.bits);
  Scalar zj = z * z;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < shape.bits; ++k) w[Eigen::Index(j * shape.bits + k)] = zj * two[Eigen::Index(k)];
    zj *= z;
  }
  return w;
}

}  // namespace

std::size_t RangeShape::padded_values() const { return next_pow2(values); }

std::size_t RangeShape::length() const { return next_pow2(padded_values() * bits); }

void RangeProof::write(ByteWriter& w) const {
  w.point(bit_commitment);
  w.scalar(qz);
  ipa_q.write(w);
  ipa_lr.write(w);
}

RangeProof RangeProof::read(ByteReader& r) {
  RangeProof p;
  p.bit_commitment = r.point();
  p.qz = r.scalar();
  p.ipa_q = IpaProof::read(r);
  p.ipa_lr = IpaProof::read(r);
  return p;
}

ScalarVector range_bits(std::span<const Scalar> values, std::size_t bits) {
  const RangeShape shape{values.size(), bits};
  check_shape(shape);
  ScalarVector a = ScalarVector::Constant(Eigen::Index(shape.length()), Scalar());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const Limbs v = values[j].to_limbs();
    if (detail::bit_length(v) > int(bits)) {
      throw ProofError("range proof: value " + std::to_string(j) + " is outside [0, 2^" + std::to_string(bits) + ")");
    }
    for (std::size_t k = 0; k < bits; ++k) {
      if ((v[k / 64] >> (k % 64)) & 1) a[Eigen::Index(j * bits + k)] = Scalar::one();
    }
  }
  return a;
}

Scalar range_delta(const RangeShape& shape, const Scalar& y, const Scalar& z) {
  const Scalar sum_y = powers(y, shape.length()).sum();
  const Scalar sum_two = Scalar(2).pow(shape.bits) - Scalar::one();
  Scalar sum_z;  // sum_j z^{j+3}
  Scalar zj = z * z * z;
  for (std::size_t j = 0; j < shape.padded_values(); ++j) {
    sum_z += zj;
    zj *= z;
  }
  return (z - z * z) * sum_y - sum_z * sum_two;
}

RangeProof rp_prove(const GeneratorSet& gens, std::span<const Scalar> values, std::size_t bits, Transcript& tr) {
  ScalarVector a_left = range_bits(values, bits);
  ScalarVector a_right = a_left - ScalarVector::Constant(a_left.size(), Scalar::one());
  return detail::rp_prove_unchecked(gens, values, bits, a_left, a_right, tr);
}

namespace detail {

RangeProof rp_prove_unchecked(const GeneratorSet& gens, std::span<const Scalar> values, std::size_t bits,
                              const ScalarVector& a_left, const ScalarVector& a_right, Transcript& tr) {
  const RangeShape shape{values.size(), bits};
  check_shape(shape);
  const std::size_t m = shape.padded_values();
  const std::size_t n = shape.length();
  if (std::size_t(a_left.size()) != n || std::size_t(a_right.size()) != n) {
    throw DimensionError("range proof: bit vectors must have length " + std::to_string(n));
  }
  if (gens.tau() < n) throw DimensionError("range proof: generator set too small");

  RangeProof proof;
  proof.bit_commitment = commit(gens.g_slice(n), a_left) + commit(gens.h_slice(n), a_right);
  tr.absorb_point("rp/A", proof.bit_commitment);
  const Scalar y = tr.challenge_scalar("rp/y");
  const Scalar z = tr.challenge_scalar("rp/z");

  const ScalarVector v = padded(values, m);
  ScalarVector zm = powers(z, m);
  proof.qz = inner_product(zm, v);
  tr.absorb_scalar("rp/qz", proof.qz);
  proof.ipa_q = ipa_prove(IpaBases{gens.g_slice(m), gens.h_slice(m), gens.u}, v, std::move(zm), proof.qz, tr);

  const ScalarVector ones = ScalarVector::Constant(Eigen::Index(n), Scalar::one());
  const ScalarVector yn = powers(y, n);
  ScalarVector left = a_left - z * ones;
  ScalarVector right = yn.cwiseProduct(a_right + z * ones) + bit_weights(shape, z);
  const Scalar t = inner_product(left, right);
  const IpaBases bases{gens.g_slice(n), gens.h_slice(n), gens.u, y.inverse()};
  proof.ipa_lr = ipa_prove(bases, std::move(left), std::move(right), t, tr);
  return proof;
}

}  // namespace detail

Verdict rp_verify(const GeneratorSet& gens, const MultiExp& commitment, const RangeShape& shape, const RangeProof& proof,
                  Transcript& tr) {
  if (shape.values == 0 || shape.bits == 0 || shape.bits > kMaxBits) return Verdict::reject("bad shape");
  const std::size_t m = shape.padded_values();
  const std::size_t n = shape.length();
  if (gens.tau() < n) return Verdict::reject("generator set too small");

  tr.absorb_point("rp/A", proof.bit_commitment);
  const Scalar y = tr.challenge_scalar("rp/y");
  const Scalar z = tr.challenge_scalar("rp/z");
  tr.absorb_scalar("rp/qz", proof.qz);

  // P + <z^m, h[0..m)> opens to (v, z^m) with inner product qz.
  IpaStatement q_statement{{}, powers(z, m), commitment};
  if (!ipa_verify(IpaBases{gens.g_slice(m), gens.h_slice(m), gens.u}, q_statement, proof.qz, m, proof.ipa_q, tr)) {
    return Verdict::reject("value inner-product check failed");
  }

  // P'' = A - z <1, g> + <z y^N + w, h'> with h'_i = y^-i h_i.
  const Scalar t = range_delta(shape, y, z) + z * z * proof.qz;
  IpaStatement lr_statement{ScalarVector::Constant(Eigen::Index(n), -z), z * powers(y, n) + bit_weights(shape, z),
                            MultiExp(proof.bit_commitment)};
  const IpaBases bases{gens.g_slice(n), gens.h_slice(n), gens.u, y.inverse()};
  if (!ipa_verify(bases, lr_statement, t, n, proof.ipa_lr, tr)) return Verdict::reject("bit inner-product check failed");
  return Verdict::accept();
}

}  // namespace ra
