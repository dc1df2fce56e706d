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


#include "ra/layerproto.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ra/mle.hpp"
#include "support.hpp"

namespace ra {
namespace {

using testing::F131;
using testing::shared_generators;

const FixedPointParams kParams{8, 6};

ScalarMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, int64_t bound) {
  std::uniform_int_distribution<int64_t> dist(-bound, bound);
  ScalarMatrix m(rows, cols);
  for (auto& x : m.reshaped()) x = Scalar(dist(rng));
  return m;
}

GroupElement commit_matrix(const ScalarMatrix& m) { return commit(shared_generators().g, matrix_to_mle(m)); }

MatmulDims dims_of(const ScalarMatrix& a, const ScalarMatrix& b) {
  return {std::size_t(a.rows()), std::size_t(a.cols()), std::size_t(b.cols())};
}

Verdict verify_mm(const ScalarMatrix& a, const ScalarMatrix& b, const FixedPointParams& params,
                  const MatmulRoundProof& proof) {
  Transcript tr = Transcript::fiat_shamir("mm-test");
  return verify_matmul_round(shared_generators(), commit_matrix(a), commit_matrix(b), dims_of(a, b), params, proof, tr);
}

MatmulRoundResult prove_mm(const ScalarMatrix& a, const ScalarMatrix& b, const FixedPointParams& params) {
  Transcript tr = Transcript::fiat_shamir("mm-test");
  return prove_matmul_round(shared_generators(), a, b, params, tr);
}

int64_t sym(const Scalar& x) { return *x.symmetric_i64(); }

// Inputs sized so that |C'| stays below 2^{t+1}.
std::pair<ScalarMatrix, ScalarMatrix> random_instance(std::mt19937_64& rng, Eigen::Index n) {
  const int64_t b_bound = std::max<int64_t>(1, 30000 / (n * 128));
  return {random_matrix(rng, n, n, 128), random_matrix(rng, n, n, b_bound)};
}

TEST(MatmulRound, OnePointFiveSquared) {
  const FixedPointParams params{2, 3};
  const ScalarMatrix a = ScalarMatrix::Constant(1, 1, Scalar(6));
  const ScalarMatrix b = ScalarMatrix::Constant(1, 1, Scalar(6));
  const MatmulRoundResult res = prove_mm(a, b, params);
  EXPECT_EQ(res.cp(0, 0), Scalar(9));
  EXPECT_DOUBLE_EQ(decode_fixed(res.cp(0, 0), params), 1.5 * 1.5);
  const Verdict v = verify_mm(a, b, params, res.proof);
  EXPECT_TRUE(v.accepted()) << v.reason();
}

TEST(MatmulRound, IdentityLeavesInputUnchanged) {
  std::mt19937_64 rng(1);
  const ScalarMatrix id = ScalarMatrix::Identity(8, 8) * Scalar(256);
  const ScalarMatrix b = random_matrix(rng, 8, 4, 127);
  const MatmulRoundResult res = prove_mm(id, b, kParams);
  EXPECT_EQ(res.cp, b);
  EXPECT_TRUE(verify_mm(id, b, kParams, res.proof).accepted());
}

class MatmulSizes : public ::testing::TestWithParam<Eigen::Index> {};

TEST_P(MatmulSizes, HonestAcceptedAndRoundingMatchesRationalOracle) {
  const Eigen::Index n = GetParam();
  std::mt19937_64 rng{uint64_t(n)};
  for (int rep = 0; rep < 2; ++rep) {
    const auto [a, b] = random_instance(rng, n);
    const MatmulRoundResult res = prove_mm(a, b, kParams);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        int64_t c = 0;
        for (Eigen::Index l = 0; l < n; ++l) c += sym(a(i, l)) * sym(b(l, j));
        // Nearest multiple of 2^-s with ties toward +infinity.
        const double want = std::floor(double(c) / 256.0 + 0.5);
        ASSERT_EQ(double(sym(res.cp(i, j))), want);
      }
    }
    const Verdict v = verify_mm(a, b, kParams, res.proof);
    EXPECT_TRUE(v.accepted()) << v.reason();
  }
}

INSTANTIATE_TEST_SUITE_P(Square, MatmulSizes, ::testing::Values(2, 4, 8, 16));

TEST(MatmulRound, RectangularShapes) {
  std::mt19937_64 rng(2);
  const ScalarMatrix a = random_matrix(rng, 4, 32, 60);
  const ScalarMatrix b = random_matrix(rng, 32, 1, 60);
  const MatmulRoundResult res = prove_mm(a, b, kParams);
  EXPECT_EQ(res.cp.rows(), 4);
  EXPECT_EQ(res.cp.cols(), 1);
  EXPECT_TRUE(verify_mm(a, b, kParams, res.proof).accepted());
}

TEST(MatmulRound, ShiftedOutputEntryRejected) {
  std::mt19937_64 rng(3);
  const auto [a, b] = random_instance(rng, 4);
  for (int delta : {1, -1}) {
    for (const auto strategy : {detail::BitStrategy::kWrapped, detail::BitStrategy::kNonBit}) {
      Transcript tr = Transcript::fiat_shamir("mm-test");
      const detail::MatmulPrefix prefix = detail::matmul_prefix(shared_generators(), a, b, kParams, tr);
      ScalarMatrix cp = prefix.c.unaryExpr([](const Scalar& x) { return round_fixed(x, kParams); });
      cp(1, 2) += Scalar(delta);
      const MatmulRoundProof proof = detail::matmul_finish(shared_generators(), prefix, cp, kParams, strategy, tr);
      const Verdict v = verify_mm(a, b, kParams, proof);
      EXPECT_FALSE(v.accepted());
      EXPECT_NE(v.reason().find("rounding residual"), std::string::npos) << v.reason();
    }
  }
}

TEST(MatmulRound, SubstitutedAndStrippedPartsRejected) {
  std::mt19937_64 rng(4);
  const auto [a, b] = random_instance(rng, 4);
  const MatmulRoundResult res = prove_mm(a, b, kParams);
  {
    MatmulRoundProof bad = res.proof;
    ScalarMatrix c = a * b;
    c(0, 0) += Scalar(1);
    bad.p_c = commit_matrix(c);
    EXPECT_FALSE(verify_mm(a, b, kParams, bad).accepted());
  }
  {
    // range_cp taken from another instance.
    const auto [a2, b2] = random_instance(rng, 4);
    MatmulRoundProof bad = res.proof;
    bad.range_cp = prove_mm(a2, b2, kParams).proof.range_cp;
    const Verdict v = verify_mm(a, b, kParams, bad);
    EXPECT_FALSE(v.accepted());
    EXPECT_NE(v.reason().find("rounded output"), std::string::npos) << v.reason();
  }
  {
    MatmulRoundProof bad = res.proof;
    bad.range_cp = RangeProof{};
    EXPECT_FALSE(verify_mm(a, b, kParams, bad).accepted());
  }
  {
    MatmulRoundProof bad = res.proof;
    bad.sumcheck.rounds[0].coeffs[0] += Scalar(1);
    EXPECT_FALSE(verify_mm(a, b, kParams, bad).accepted());
  }
  {
    MatmulRoundProof bad = res.proof;
    bad.open_c.value += Scalar(1);
    EXPECT_FALSE(verify_mm(a, b, kParams, bad).accepted());
  }
  {
    // Verifier expects a different A.
    ScalarMatrix other = a;
    other(0, 0) += Scalar(1);
    Transcript tr = Transcript::fiat_shamir("mm-test");
    EXPECT_FALSE(verify_matmul_round(shared_generators(), commit_matrix(other), commit_matrix(b), dims_of(a, b), kParams,
                                     res.proof, tr)
                     .accepted());
  }
  {
    Transcript tr = Transcript::fiat_shamir("mm-test");
    EXPECT_FALSE(verify_matmul_round(shared_generators(), commit_matrix(a), commit_matrix(b), MatmulDims{4, 4, 2},
                                     kParams, res.proof, tr)
                     .accepted());
  }
}

TEST(MatmulRound, ProverRejectsBadInputs) {
  std::mt19937_64 rng(5);
  EXPECT_THROW(prove_mm(random_matrix(rng, 3, 4, 5), random_matrix(rng, 4, 4, 5), kParams), DimensionError);
  EXPECT_THROW(prove_mm(random_matrix(rng, 4, 4, 5), random_matrix(rng, 2, 4, 5), kParams), DimensionError);
  ScalarMatrix big = random_matrix(rng, 2, 2, 5);
  big(0, 1) = Scalar(int64_t(1) << 14);
  EXPECT_THROW(prove_mm(big, random_matrix(rng, 2, 2, 5), kParams), OverflowError);
  // 2^13 * 2^13 / 2^8 overflows the rounded range.
  const ScalarMatrix wide = ScalarMatrix::Constant(2, 2, Scalar(int64_t(1) << 13));
  EXPECT_THROW(prove_mm(wide, wide, kParams), OverflowError);
}

TEST(MatmulRound, ProofBytesMatchTranscriptAndGrowLogarithmically) {
  std::mt19937_64 rng(6);
  std::vector<std::size_t> sizes;
  for (Eigen::Index n : {4, 8, 16}) {
    const auto [a, b] = random_instance(rng, n);
    Transcript tr = Transcript::fiat_shamir("mm-test");
    const MatmulRoundResult res = prove_matmul_round(shared_generators(), a, b, kParams, tr);
    EXPECT_EQ(tr.prover_bytes(), res.proof.byte_size());
    sizes.push_back(res.proof.byte_size());
  }
  EXPECT_EQ(sizes[2] - sizes[1], sizes[1] - sizes[0]);
}

TEST(MatmulRound, InteractiveModeAndSerialization) {
  std::mt19937_64 rng(7);
  const auto [a, b] = random_instance(rng, 4);
  const Transcript::Seed seed = Transcript::random_seed();
  Transcript ptr = Transcript::interactive(seed);
  const MatmulRoundResult res = prove_matmul_round(shared_generators(), a, b, kParams, ptr);
  ByteWriter w;
  write_layer_proof(w, res.proof);
  ByteReader r(w.data());
  const LayerProof back = read_layer_proof(r);
  r.expect_done();
  ASSERT_TRUE(std::holds_alternative<MatmulRoundProof>(back));
  EXPECT_EQ(layer_proof_bytes(back), res.proof.byte_size());
  Transcript vtr = Transcript::interactive(seed);
  EXPECT_TRUE(verify_matmul_round(shared_generators(), commit_matrix(a), commit_matrix(b), dims_of(a, b), kParams,
                                  std::get<MatmulRoundProof>(back), vtr)
                  .accepted());
  EXPECT_EQ(ptr.verifier_bytes(), vtr.verifier_bytes());
}

// ReLU.

ScalarMatrix column(std::initializer_list<int64_t> xs) {
  ScalarMatrix m(Eigen::Index(xs.size()), 1);
  Eigen::Index i = 0;
  for (int64_t x : xs) m(i++, 0) = Scalar(x);
  return m;
}

Verdict verify_rl(const ScalarMatrix& a, const ReluProof& proof, std::size_t bits) {
  Transcript tr = Transcript::fiat_shamir("relu-test");
  return verify_relu(shared_generators(), commit_matrix(a), ReluShape{std::size_t(a.size()), bits}, proof, tr);
}

ReluProof forge(const ScalarMatrix& a, const ScalarVector& y, const ScalarVector* b, std::size_t bits) {
  Transcript tr = Transcript::fiat_shamir("relu-test");
  return detail::relu_with(shared_generators(), a, commit_matrix(a), y, b, bits, detail::BitStrategy::kWrapped, tr);
}

TEST(Relu, SmallExample) {
  const ScalarMatrix a = column({5, -3, 0, 7});
  Transcript tr = Transcript::fiat_shamir("relu-test");
  const ReluResult res = prove_relu(shared_generators(), a, commit_matrix(a), relu_bits(kParams), tr);
  EXPECT_EQ(res.b, column({5, 0, 0, 7}));
  EXPECT_EQ(res.proof.p_b, commit_matrix(res.b));
  EXPECT_EQ(tr.prover_bytes(), res.proof.byte_size());
  const Verdict v = verify_rl(a, res.proof, relu_bits(kParams));
  EXPECT_TRUE(v.accepted()) << v.reason();
}

TEST(Relu, ForgedNegativeYRejectedByRange) {
  const ScalarMatrix a = column({5, -3, 0, 7});
  ScalarVector y(4);
  y << Scalar(5), Scalar(-3), Scalar(0), Scalar(7);
  const Verdict v = verify_rl(a, forge(a, y, nullptr, 8), 8);
  EXPECT_FALSE(v.accepted());
  EXPECT_NE(v.reason().find("range"), std::string::npos) << v.reason();
}

TEST(Relu, ForgedWrongMagnitudeRejectedByEquality) {
  const ScalarMatrix a = column({5, -3, 0, 7});
  ScalarVector y(4);
  y << Scalar(5), Scalar(4), Scalar(0), Scalar(7);
  const Verdict v = verify_rl(a, forge(a, y, nullptr, 8), 8);
  EXPECT_FALSE(v.accepted());
  EXPECT_NE(v.reason().find("equality"), std::string::npos) << v.reason();
}

TEST(Relu, OutputNotHalfSumRejected) {
  const ScalarMatrix a = column({5, -3, 0, 7});
  ScalarVector y(4), b(4);
  y << Scalar(5), Scalar(3), Scalar(0), Scalar(7);
  b << Scalar(5), Scalar(1), Scalar(0), Scalar(7);
  const Verdict v = verify_rl(a, forge(a, y, &b, 8), 8);
  EXPECT_FALSE(v.accepted());
  EXPECT_NE(v.reason().find("P_B"), std::string::npos) << v.reason();
}

TEST(Relu, RandomMatricesAccepted) {
  std::mt19937_64 rng(8);
  for (Eigen::Index n : {1, 2, 16}) {
    const ScalarMatrix a = random_matrix(rng, n, 16, 127);
    Transcript tr = Transcript::fiat_shamir("relu-test");
    const ReluResult res = prove_relu(shared_generators(), a, commit_matrix(a), 8, tr);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      EXPECT_EQ(sym(res.b.reshaped()[i]), std::max<int64_t>(0, sym(a.reshaped()[i])));
    }
    EXPECT_TRUE(verify_rl(a, res.proof, 8).accepted());
  }
}

TEST(Relu, ProverRefusesOverflow) {
  const ScalarMatrix a = column({5, -300});
  Transcript tr = Transcript::fiat_shamir("relu-test");
  EXPECT_THROW(prove_relu(shared_generators(), a, commit_matrix(a), 8, tr), OverflowError);
}

TEST(Relu, SerializationRoundTrips) {
  const ScalarMatrix a = column({1, -1});
  Transcript tr = Transcript::fiat_shamir("relu-test");
  const ReluResult res = prove_relu(shared_generators(), a, commit_matrix(a), 8, tr);
  ByteWriter w;
  write_layer_proof(w, res.proof);
  ByteReader r(w.data());
  const LayerProof back = read_layer_proof(r);
  r.expect_done();
  ASSERT_TRUE(std::holds_alternative<ReluProof>(back));
  EXPECT_TRUE(verify_rl(a, std::get<ReluProof>(back), 8).accepted());
  std::vector<uint8_t> bad = w.data();
  bad[0] = 9;
  ByteReader rb(bad);
  EXPECT_THROW(read_layer_proof(rb), FormatError);
}

// With |a|, |y| < 2^{t+2} and the small modulus, y^2 = a^2 (mod p) forces
// y = +-a over the integers.
TEST(Relu, SquareEqualityImpliesSignedEqualitySmallPrime) {
  const int t = 2;
  const int bound = 1 << (t + 2);
  for (int a = -bound + 1; a < bound; ++a) {
    for (int y = -bound + 1; y < bound; ++y) {
      const bool squares_equal = F131(a) * F131(a) == F131(y) * F131(y);
      ASSERT_EQ(squares_equal, y == a || y == -a) << a << " " << y;
    }
  }
}

TEST(Relu, RequiredModulusBits) {
  EXPECT_TRUE(fits_modulus(kParams, 1024));
  EXPECT_FALSE(fits_modulus(kParams, 3));
  EXPECT_FALSE(fits_modulus(FixedPointParams{70, 60}, 2));
}

}  // namespace
}  // namespace ra
