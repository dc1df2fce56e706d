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

#include <gtest/gtest.h>

#include "ra/mle.hpp"
#include "support.hpp"

namespace ra {
namespace {

using testing::as_span;
using testing::random_element;
using testing::random_ints;
using testing::shared_generators;

GroupElement commit_values(std::span<const Scalar> values) { return commit(shared_generators().g, values); }

Verdict prove_and_verify(std::span<const Scalar> values, std::size_t bits) {
  Transcript ptr = Transcript::fiat_shamir("rp-test");
  const RangeProof proof = rp_prove(shared_generators(), values, bits, ptr);
  Transcript vtr = Transcript::fiat_shamir("rp-test");
  return rp_verify(shared_generators(), commit_values(values), RangeShape{values.size(), bits}, proof, vtr);
}

/// Cheating prover: commits to `values` but proves with arbitrary bit vectors.
Verdict cheat(std::span<const Scalar> values, std::size_t bits, const ScalarVector& a_left, const ScalarVector& a_right) {
  Transcript ptr = Transcript::fiat_shamir("rp-test");
  const RangeProof proof = detail::rp_prove_unchecked(shared_generators(), values, bits, a_left, a_right, ptr);
  Transcript vtr = Transcript::fiat_shamir("rp-test");
  return rp_verify(shared_generators(), commit_values(values), RangeShape{values.size(), bits}, proof, vtr);
}

struct Shape {
  std::size_t m, n;
};

class RangeShapes : public ::testing::TestWithParam<Shape> {};

TEST_P(RangeShapes, RandomInRangeAccepted) {
  const auto [m, n] = GetParam();
  std::mt19937_64 rng(m * 100 + n);
  const ScalarVector v = random_ints(rng, m, 0, (int64_t(1) << n) - 1);
  const Verdict verdict = prove_and_verify(as_span(v), n);
  EXPECT_TRUE(verdict.accepted()) << verdict.reason();
}

TEST_P(RangeShapes, BoundariesAccepted) {
  const auto [m, n] = GetParam();
  ScalarVector v{Eigen::Index(m)};
  for (std::size_t j = 0; j < m; ++j) v[Eigen::Index(j)] = j % 2 ? Scalar((int64_t(1) << n) - 1) : Scalar();
  EXPECT_TRUE(prove_and_verify(as_span(v), n).accepted());
}

TEST_P(RangeShapes, HonestProverRefusesOutOfRange) {
  const auto [m, n] = GetParam();
  ScalarVector v = ScalarVector::Constant(Eigen::Index(m), Scalar(1));
  v[Eigen::Index(m - 1)] = Scalar(int64_t(1) << n);
  EXPECT_THROW(range_bits(as_span(v), n), ProofError);
  v[Eigen::Index(m - 1)] = Scalar(-1);
  EXPECT_THROW(range_bits(as_span(v), n), ProofError);
}

// Claims the wrapped value 2^n - 1 for a commitment to -1.
TEST_P(RangeShapes, WrappedBitsRejected) {
  const auto [m, n] = GetParam();
  ScalarVector v = ScalarVector::Constant(Eigen::Index(m), Scalar(1));
  v[0] = Scalar(-1);
  ScalarVector claimed = v;
  claimed[0] = Scalar((int64_t(1) << n) - 1);
  const ScalarVector a_left = range_bits(as_span(claimed), n);
  const ScalarVector a_right = a_left - ScalarVector::Constant(a_left.size(), Scalar::one());
  EXPECT_FALSE(cheat(as_span(v), n, a_left, a_right).accepted());
}

// Non-boolean digits whose weighted sum is exactly the out-of-range value.
TEST_P(RangeShapes, NonBitDigitsRejected) {
  const auto [m, n] = GetParam();
  ScalarVector v = ScalarVector::Constant(Eigen::Index(m), Scalar(2));
  v[Eigen::Index(m - 1)] = Scalar(int64_t(1) << n);
  ScalarVector in_range = v;
  in_range[Eigen::Index(m - 1)] = Scalar();
  ScalarVector a_left = range_bits(as_span(in_range), n);
  a_left[Eigen::Index((m - 1) * n)] = Scalar(int64_t(1) << n);
  const ScalarVector a_right = a_left - ScalarVector::Constant(a_left.size(), Scalar::one());
  EXPECT_FALSE(cheat(as_span(v), n, a_left, a_right).accepted());
}

INSTANTIATE_TEST_SUITE_P(Sizes, RangeShapes,
                         ::testing::Values(Shape{1, 2}, Shape{3, 5}, Shape{4, 8}, Shape{16, 16}, Shape{2, 32}),
                         [](const auto& info) {
                           return "m" + std::to_string(info.param.m) + "_n" + std::to_string(info.param.n);
                         });

TEST(RangeProof, ShapeRoundsToPowersOfTwo) {
  const RangeShape s{3, 5};
  EXPECT_EQ(s.padded_values(), 4u);
  EXPECT_EQ(s.length(), 32u);
  EXPECT_EQ((RangeShape{16, 16}.length()), 256u);
  EXPECT_EQ((RangeShape{1, 2}.length()), 2u);
}

// <a_L - z, y^N o (a_R + z) + w> = delta(y, z) + z^2 <z^m, v> for honest bits.
TEST(RangeProof, DeltaIdentity) {
  std::mt19937_64 rng(77);
  for (const auto [m, n] : {Shape{1, 2}, Shape{3, 5}, Shape{5, 7}}) {
    const RangeShape shape{m, n};
    const ScalarVector v = random_ints(rng, m, 0, (int64_t(1) << n) - 1);
    const ScalarVector a_left = range_bits(as_span(v), n);
    const Scalar y = random_element(rng);
    const Scalar z = random_element(rng);

    Scalar lhs;
    Scalar y_i = Scalar::one();
    for (std::size_t i = 0; i < shape.length(); ++i) {
      const Scalar al = a_left[Eigen::Index(i)];
      const Scalar ar = al - Scalar::one();
      Scalar w;
      const std::size_t j = i / n;
      if (j < shape.padded_values()) w = z.pow(2 + j) * Scalar(2).pow(i % n);
      lhs += (al - z) * (y_i * (ar + z) + w);
      y_i *= y;
    }
    Scalar qz;
    for (std::size_t j = 0; j < m; ++j) qz += z.pow(j) * v[Eigen::Index(j)];
    EXPECT_EQ(lhs, range_delta(shape, y, z) + z * z * qz) << "m=" << m << " n=" << n;
  }
}

TEST(RangeProof, RejectsOtherCommitmentAndShape) {
  const ScalarVector v = ScalarVector::Constant(4, Scalar(9));
  Transcript ptr = Transcript::fiat_shamir("rp-test");
  const RangeProof proof = rp_prove(shared_generators(), as_span(v), 8, ptr);
  {
    ScalarVector w = v;
    w[2] = Scalar(10);
    Transcript vtr = Transcript::fiat_shamir("rp-test");
    EXPECT_FALSE(rp_verify(shared_generators(), commit_values(as_span(w)), RangeShape{4, 8}, proof, vtr).accepted());
  }
  {
    Transcript vtr = Transcript::fiat_shamir("rp-test");
    EXPECT_FALSE(rp_verify(shared_generators(), commit_values(as_span(v)), RangeShape{4, 4}, proof, vtr).accepted());
  }
  {
    RangeProof bad = proof;
    bad.qz += Scalar::one();
    Transcript vtr = Transcript::fiat_shamir("rp-test");
    EXPECT_FALSE(rp_verify(shared_generators(), commit_values(as_span(v)), RangeShape{4, 8}, bad, vtr).accepted());
  }
}

TEST(RangeProof, SerializationRoundTrips) {
  const ScalarVector v = ScalarVector::Constant(3, Scalar(5));
  Transcript ptr = Transcript::fiat_shamir("rp-test");
  const RangeProof proof = rp_prove(shared_generators(), as_span(v), 4, ptr);
  ByteWriter w;
  proof.write(w);
  EXPECT_EQ(w.data().size(), proof.byte_size() + 8);  // plus two fold counts
  ByteReader r(w.data());
  const RangeProof back = RangeProof::read(r);
  r.expect_done();
  Transcript vtr = Transcript::fiat_shamir("rp-test");
  EXPECT_TRUE(rp_verify(shared_generators(), commit_values(as_span(v)), RangeShape{3, 4}, back, vtr).accepted());
}

TEST(RangeProof, InteractiveModeCountsBytes) {
  const ScalarVector v = ScalarVector::Constant(2, Scalar(1));
  const Transcript::Seed seed = Transcript::random_seed();
  Transcript ptr = Transcript::interactive(seed);
  const RangeProof proof = rp_prove(shared_generators(), as_span(v), 4, ptr);
  Transcript vtr = Transcript::interactive(seed);
  EXPECT_TRUE(rp_verify(shared_generators(), commit_values(as_span(v)), RangeShape{2, 4}, proof, vtr).accepted());
  EXPECT_GT(ptr.prover_bytes(), 0u);
  EXPECT_EQ(ptr.verifier_bytes(), vtr.verifier_bytes());
}

}  // namespace
}  // namespace ra
