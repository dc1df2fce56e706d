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


#include "ra/group.hpp"

#include <gtest/gtest.h>

#include <optional>

#include "support.hpp"

namespace ra {
namespace {

using boost::multiprecision::cpp_int;
using testing::random_element;
using testing::shared_generators;

// Textbook affine arithmetic over big integers.
struct RefPoint {
  cpp_int x, y;
  bool inf = true;
};

const cpp_int kP("0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F");
const cpp_int kN("0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141");

cpp_int mod(const cpp_int& v) {
  cpp_int r = v % kP;
  return r < 0 ? r + kP : r;
}

cpp_int inv(const cpp_int& v) { return boost::multiprecision::powm(mod(v), kP - 2, kP); }

RefPoint ref_add(const RefPoint& a, const RefPoint& b) {
  if (a.inf) return b;
  if (b.inf) return a;
  cpp_int lambda;
  if (a.x == b.x) {
    if (mod(a.y + b.y) == 0) return {};
    lambda = mod(3 * a.x * a.x * inv(2 * a.y));
  } else {
    lambda = mod((b.y - a.y) * inv(b.x - a.x));
  }
  const cpp_int x = mod(lambda * lambda - a.x - b.x);
  return {x, mod(lambda * (a.x - x) - a.y), false};
}

RefPoint ref_mul(cpp_int k, RefPoint p) {
  RefPoint acc;
  while (k > 0) {
    if (k & 1) acc = ref_add(acc, p);
    p = ref_add(p, p);
    k >>= 1;
  }
  return acc;
}

cpp_int big(const Limbs& l) {
  cpp_int v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 64) | l[std::size_t(i)];
  return v;
}

RefPoint to_ref(const GroupElement& g) {
  const AffinePoint a = g.to_affine();
  if (a.infinity) return {};
  return {big(a.x.to_limbs()), big(a.y.to_limbs()), false};
}

bool same(const GroupElement& g, const RefPoint& r) {
  const RefPoint a = to_ref(g);
  return a.inf == r.inf && (a.inf || (a.x == r.x && a.y == r.y));
}

GroupElement from_hex(const std::string& hex) {
  std::vector<uint8_t> b;
  for (std::size_t i = 0; i < hex.size(); i += 2) b.push_back(uint8_t(std::stoi(hex.substr(i, 2), nullptr, 16)));
  return GroupElement::from_bytes(b);
}

const GroupElement& base_point() {
  static const GroupElement g = from_hex("0279BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798");
  return g;
}

cpp_int scalar_big(const Scalar& s) { return big(s.to_limbs()); }

TEST(Group, KnownMultiplesOfBasePoint) {
  const GroupElement g = base_point();
  EXPECT_EQ((Scalar(2) * g).to_hex(), "02c6047f9441ed7d6d3045406e95c07cd85c778e4b8cef3ca7abac09b95c709ee5");
  EXPECT_EQ((Scalar(3) * g).to_hex(), "02f9308a019258c31049344f85f89d5229b531c845836f99b08601f113bce036f9");
  EXPECT_EQ(g + g, g.dbl());
  EXPECT_TRUE((Scalar(-1) * g + g).is_identity());
}

TEST(Group, ScalarMultiplicationMatchesReference) {
  std::mt19937_64 rng(1);
  const RefPoint g_ref = to_ref(base_point());
  for (int i = 0; i < 10; ++i) {
    const Scalar k = random_element(rng);
    ASSERT_TRUE(same(k * base_point(), ref_mul(scalar_big(k), g_ref)));
  }
  EXPECT_TRUE((Scalar() * base_point()).is_identity());
}

TEST(Group, AdditionLaws) {
  std::mt19937_64 rng(2);
  const GroupElement a = random_element(rng) * base_point();
  const GroupElement b = random_element(rng) * base_point();
  const GroupElement c = random_element(rng) * base_point();
  EXPECT_EQ(a + b, b + a);
  EXPECT_EQ((a + b) + c, a + (b + c));
  EXPECT_EQ(a + GroupElement::identity(), a);
  EXPECT_TRUE((a - a).is_identity());
  EXPECT_EQ(a.add_affine(b.to_affine()), a + b);
  EXPECT_EQ(a.add_affine(a.to_affine()), a.dbl());
  EXPECT_TRUE(a.add_affine((-a).to_affine()).is_identity());
  EXPECT_TRUE(same(a + b, ref_add(to_ref(a), to_ref(b))));
}

TEST(Group, EncodingRoundTripsAndRejectsGarbage) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const GroupElement a = random_element(rng) * base_point();
    EXPECT_EQ(GroupElement::from_bytes(a.to_bytes()), a);
  }
  const GroupElement::Encoding zero{};
  EXPECT_TRUE(GroupElement::from_bytes(zero).is_identity());
  EXPECT_EQ(GroupElement().to_bytes(), zero);

  GroupElement::Encoding bad = base_point().to_bytes();
  bad[0] = 0x04;
  EXPECT_THROW(GroupElement::from_bytes(bad), GroupError);
  GroupElement::Encoding pad = zero;
  pad[5] = 1;
  EXPECT_THROW(GroupElement::from_bytes(pad), GroupError);
  GroupElement::Encoding too_big{};
  too_big[0] = 0x02;
  std::fill(too_big.begin() + 1, too_big.end(), 0xFF);
  EXPECT_THROW(GroupElement::from_bytes(too_big), GroupError);
  // Roughly half of all x have no y on the curve.
  int rejected = 0;
  for (uint8_t x = 1; x <= 20; ++x) {
    GroupElement::Encoding off{};
    off[0] = 0x02;
    off[32] = x;
    try {
      const GroupElement e = GroupElement::from_bytes(off);
      const RefPoint r = to_ref(e);
      EXPECT_EQ(mod(r.y * r.y), mod(r.x * r.x * r.x + 7));
    } catch (const GroupError&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
  EXPECT_THROW(GroupElement::from_bytes(std::span<const uint8_t>(bad.data(), 32)), GroupError);
}

class MsmSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(MsmSizes, MatchesNaiveSum) {
  const std::size_t n = GetParam();
  std::mt19937_64 rng(n);
  const auto& gens = shared_generators();
  std::vector<Scalar> ks(n);
  for (auto& k : ks) k = random_element(rng);
  if (n > 3) {
    ks[0] = Scalar();
    ks[1] = Scalar(-1);
    ks[2] = Scalar(1);
  }
  GroupElement naive;
  for (std::size_t i = 0; i < n; ++i) naive += ks[i] * GroupElement::from_affine(gens.g[i]);
  EXPECT_EQ(msm(std::span(gens.g).first(n), ks), naive);

  std::vector<GroupElement> proj;
  for (std::size_t i = 0; i < n; ++i) proj.push_back(GroupElement::from_affine(gens.h[i]));
  GroupElement naive_h;
  for (std::size_t i = 0; i < n; ++i) naive_h += ks[i] * proj[i];
  EXPECT_EQ(msm(proj, ks), naive_h);
}

INSTANTIATE_TEST_SUITE_P(Lengths, MsmSizes, ::testing::Values(0, 1, 2, 7, 33, 130, 600));

TEST(Group, MsmWithRepeatedBases) {
  const auto& gens = shared_generators();
  std::vector<AffinePoint> pts(64, gens.g[0]);
  std::vector<Scalar> ks(64, Scalar(3));
  EXPECT_EQ(msm(pts, ks), Scalar(192) * GroupElement::from_affine(gens.g[0]));
}

TEST(Group, BatchedPointOperations) {
  std::mt19937_64 rng(4);
  const auto& gens = shared_generators();
  const auto lo = std::span(gens.g).first(40);
  const auto hi = std::span(gens.h).first(40);
  const Scalar k = random_element(rng);
  const auto scaled = scale_points(lo, k);
  const auto folded = fold_points(lo, hi, k);
  const auto summed = add_points(lo, hi);
  for (std::size_t i = 0; i < 40; ++i) {
    const GroupElement l = GroupElement::from_affine(lo[i]);
    const GroupElement h = GroupElement::from_affine(hi[i]);
    EXPECT_EQ(GroupElement::from_affine(scaled[i]), k * l);
    EXPECT_EQ(GroupElement::from_affine(folded[i]), l + k * h);
    EXPECT_EQ(GroupElement::from_affine(summed[i]), l + h);
  }
  // Cancelling pairs exercise the identity paths.
  std::vector<AffinePoint> neg;
  for (const auto& p : lo) neg.push_back((-GroupElement::from_affine(p)).to_affine());
  for (const auto& p : add_points(lo, neg)) EXPECT_TRUE(p.infinity);
  for (const auto& p : fold_points(lo, lo, Scalar(-1))) EXPECT_TRUE(p.infinity);
}

TEST(Group, DoubleMulAndBatchAffine) {
  std::mt19937_64 rng(5);
  const GroupElement p = random_element(rng) * base_point();
  const GroupElement q = random_element(rng) * base_point();
  const Scalar a = random_element(rng), b = random_element(rng);
  EXPECT_EQ(double_mul(a, p, b, q), a * p + b * q);
  const std::vector<GroupElement> pts = {p, GroupElement(), q, p + q};
  const auto aff = batch_to_affine(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(aff[i], pts[i].to_affine());
}

TEST(Group, MultiExpCombinesLazily) {
  std::mt19937_64 rng(6);
  const auto& gens = shared_generators();
  const GroupElement p = random_element(rng) * base_point();
  MultiExp m;
  m.add(Scalar(2), gens.g[0]).add(Scalar(3), p);
  MultiExp outer(p);
  outer.add(m, Scalar(5));
  EXPECT_EQ(outer.eval(), p + Scalar(10) * GroupElement::from_affine(gens.g[0]) + Scalar(15) * p);
  EXPECT_TRUE(MultiExp().eval().is_identity());
}

TEST(Generators, DeterministicDistinctAndOnCurve) {
  const GeneratorSet a = derive_generators("seed-a", 16);
  const GeneratorSet b = derive_generators("seed-a", 16);
  const GeneratorSet c = derive_generators("seed-b", 16);
  EXPECT_EQ(a.g, b.g);
  EXPECT_EQ(a.h, b.h);
  EXPECT_EQ(a.u, b.u);
  EXPECT_NE(a.g[0], c.g[0]);
  // Prefix stability: a smaller tau derives the same leading generators.
  const GeneratorSet small = derive_generators("seed-a", 4);
  EXPECT_TRUE(std::equal(small.g.begin(), small.g.end(), a.g.begin()));
  for (const auto& p : a.g) {
    const GroupElement e = GroupElement::from_affine(p);
    EXPECT_EQ(GroupElement::from_bytes(e.to_bytes()), e);
    EXPECT_TRUE((Scalar::from_signed(SignedInt(0)) * e).is_identity());
  }
  EXPECT_THROW(derive_generators("x", 0), GroupError);
}

TEST(Generators, CommitmentIsAdditive) {
  std::mt19937_64 rng(7);
  const auto& gens = shared_generators();
  const ScalarVector x = testing::random_vector(rng, 20);
  const ScalarVector y = testing::random_vector(rng, 20);
  EXPECT_EQ(commit(gens.g, ScalarVector(x + y)), commit(gens.g, x) + commit(gens.g, y));
  EXPECT_EQ(commit(gens.g, ScalarVector::Constant(5, Scalar::one())), sum_points(std::span(gens.g).first(5)));
  EXPECT_THROW(commit(std::span(gens.g).first(3), x), GroupError);
}

TEST(Group, OrderAnnihilates) {
  // (n - 1) * G = -G.
  const Scalar minus_one = Scalar(-1);
  EXPECT_EQ(scalar_big(minus_one), kN - 1);
  EXPECT_EQ(minus_one * base_point(), -base_point());
}

}  // namespace
}  // namespace ra
