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


#include "ra/field.hpp"

#include <gtest/gtest.h>

#include "ra/base_field.hpp"
#include "ra/fixed_point.hpp"
#include "support.hpp"

namespace ra {
namespace {

using boost::multiprecision::cpp_int;
using testing::F131;
using testing::random_element;

cpp_int big(const Limbs& l) {
  cpp_int v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 64) | l[std::size_t(i)];
  return v;
}

template <class F>
cpp_int big_modulus() {
  return big(F::kP);
}

TEST(SmallField, ExhaustiveAgainstIntegers) {
  for (int a = 0; a < 131; ++a) {
    const F131 fa(a);
    for (int b = 0; b < 131; ++b) {
      const F131 fb(b);
      ASSERT_EQ(big((fa + fb).to_limbs()), (a + b) % 131);
      ASSERT_EQ(big((fa - fb).to_limbs()), (a - b + 131) % 131);
      ASSERT_EQ(big((fa * fb).to_limbs()), (a * b) % 131);
    }
    if (a != 0) {
      ASSERT_EQ(fa * fa.inverse(), F131::one());
    }
  }
  EXPECT_THROW(F131().inverse(), FieldError);
  EXPECT_EQ(F131(-1), F131(130));
  EXPECT_EQ(*F131(130).symmetric_i64(), -1);
  EXPECT_EQ(*F131(65).symmetric_i64(), 65);
  EXPECT_EQ(*F131(66).symmetric_i64(), -65);
}

template <class F>
void check_against_bigint(uint64_t seed) {
  std::mt19937_64 rng(seed);
  const cpp_int p = big_modulus<F>();
  for (int i = 0; i < 500; ++i) {
    const F a = F::from_canonical({rng(), rng(), rng(), rng() >> 1});
    const F b = F::from_canonical({rng(), rng(), rng(), rng() >> 1});
    const cpp_int x = big(a.to_limbs()), y = big(b.to_limbs());
    ASSERT_LT(x, p);
    ASSERT_EQ(big((a * b).to_limbs()), (x * y) % p);
    ASSERT_EQ(big((a + b).to_limbs()), (x + y) % p);
    ASSERT_EQ(big((a - b).to_limbs()), (x + p - y) % p);
    ASSERT_EQ(a.square(), a * a);
    if (!a.is_zero()) {
      ASSERT_EQ(a * a.inverse(), F::one());
    }
  }
}

TEST(ScalarField, MatchesBigIntegerArithmetic) { check_against_bigint<Scalar>(1); }
TEST(BaseField, MatchesBigIntegerArithmetic) { check_against_bigint<Secp256k1Fq>(2); }

TEST(BaseField, EdgeValuesNearModulus) {
  Limbs pm1 = Secp256k1Fq::kP;
  pm1[0] -= 1;
  const Secp256k1Fq m1 = Secp256k1Fq::from_canonical(pm1);
  EXPECT_EQ(m1 + Secp256k1Fq::one(), Secp256k1Fq::zero());
  EXPECT_EQ(m1 * m1, Secp256k1Fq::one());
  EXPECT_EQ(m1.square(), Secp256k1Fq::one());
  EXPECT_EQ(-Secp256k1Fq::one(), m1);
  EXPECT_THROW(Secp256k1Fq::from_canonical(Secp256k1Fq::kP), FieldError);
}

TEST(ScalarField, ByteEncodingRoundTripsAndRejectsNonCanonical) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Scalar a = random_element(rng);
    EXPECT_EQ(Scalar::from_bytes(a.to_bytes()), a);
  }
  std::array<uint8_t, Scalar::kBytes> p{};
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = uint8_t(Scalar::kP[i / 8] >> (8 * (i % 8)));
  EXPECT_THROW(Scalar::from_bytes(p), FieldError);
  EXPECT_THROW(Scalar::from_bytes(std::span<const uint8_t>(p.data(), 31)), FieldError);
}

TEST(ScalarField, WideReductionMatchesBigInteger) {
  std::mt19937_64 rng(4);
  const cpp_int p = big_modulus<Scalar>();
  for (int i = 0; i < 100; ++i) {
    std::array<uint8_t, 64> wide;
    cpp_int v = 0;
    for (auto& b : wide) b = uint8_t(rng());
    for (int k = 63; k >= 0; --k) v = (v << 8) | wide[std::size_t(k)];
    ASSERT_EQ(big(Scalar::from_wide_bytes(wide).to_limbs()), v % p);
  }
}

TEST(ScalarField, SignedConversions) {
  EXPECT_EQ(Scalar(-5) + Scalar(5), Scalar::zero());
  EXPECT_EQ(Scalar(INT64_MIN), -Scalar::from_limbs_reduce({uint64_t(1) << 63, 0, 0, 0}));
  EXPECT_EQ(Scalar::from_signed(SignedInt(-7)), Scalar(-7));
  EXPECT_EQ(Scalar(-123456789).to_symmetric(), SignedInt(-123456789));
  EXPECT_FALSE(Scalar::from_limbs_reduce({0, 0, 1, 0}).symmetric_i64().has_value());
}

TEST(Vectors, InnerProductPowersAndBatchInvert) {
  std::mt19937_64 rng(5);
  const ScalarVector a = testing::random_vector(rng, 9);
  const ScalarVector pw = powers(a[0], 9);
  for (Eigen::Index i = 0; i < 9; ++i) EXPECT_EQ(pw[i], a[0].pow(uint64_t(i)));
  Scalar ip;
  for (Eigen::Index i = 0; i < 9; ++i) ip += a[i] * pw[i];
  EXPECT_EQ(inner_product(a, pw), ip);
  std::vector<Scalar> inv(a.begin(), a.end());
  batch_invert<Scalar>(inv);
  for (std::size_t i = 0; i < inv.size(); ++i) EXPECT_EQ(inv[i] * a[Eigen::Index(i)], Scalar::one());
  EXPECT_THROW(inner_product(a, ScalarVector(a.head(3))), FieldError);
}

TEST(FixedPoint, EncodeDecode) {
  const FixedPointParams fp{8, 6};
  EXPECT_EQ(encode_fixed<Scalar>(1.5, fp), Scalar(384));
  EXPECT_EQ(encode_fixed<Scalar>(-0.25, fp), Scalar(-64));
  EXPECT_DOUBLE_EQ(decode_fixed(Scalar(-64), fp), -0.25);
  EXPECT_THROW(encode_fixed<Scalar>(128.0, fp), FieldError);
  EXPECT_THROW(encode_fixed<Scalar>(0.001, fp), FieldError);
  EXPECT_THROW((FixedPointParams{0, 6}.validate<Scalar>()), FieldError);
  EXPECT_THROW((FixedPointParams{64, 64}.validate<Scalar>()), FieldError);
  EXPECT_NO_THROW((FixedPointParams{8, 6}.validate<Scalar>()));
}

// round(x) = floor((x + 2^{s-1}) / 2^s) and the residual lies in [-2^{s-1}, 2^{s-1}).
TEST(FixedPoint, RoundingMatchesIntegerOracle) {
  const FixedPointParams fp{4, 6};
  for (int64_t x = -600; x <= 600; ++x) {
    const int64_t want = (x + 8 >= 0) ? (x + 8) / 16 : -((-(x + 8) + 15) / 16);
    ASSERT_EQ(round_fixed(Scalar(x), fp), Scalar(want)) << x;
    const int64_t res = *rounding_residual(Scalar(x), fp).symmetric_i64();
    ASSERT_GE(res, -8);
    ASSERT_LT(res, 8);
    ASSERT_EQ(res, x - 16 * want);
  }
  EXPECT_EQ(round_fixed(Scalar(8), fp), Scalar(1));
  EXPECT_EQ(round_fixed(Scalar(-8), fp), Scalar(0));
  EXPECT_EQ(round_fixed(Scalar(-9), fp), Scalar(-1));
}

TEST(FixedPoint, RoundingRefusesWrap) {
  const FixedPointParams fp{8, 6};
  const Scalar huge = Scalar::from_signed((Scalar::modulus() - 1) / 2);
  EXPECT_THROW(round_fixed(huge, fp), FieldError);
  EXPECT_THROW(round_fixed(F131(64), FixedPointParams{4, 0}), FieldError);
}

}  // namespace
}  // namespace ra
