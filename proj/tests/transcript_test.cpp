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


#include "ra/transcript.hpp"

#include <gtest/gtest.h>

#include <set>

#include "ra/wire.hpp"
#include "support.hpp"

namespace ra {
namespace {

std::vector<uint8_t> bytes(std::string_view s) { return {s.begin(), s.end()}; }

TEST(FiatShamir, SameHistorySameChallenges) {
  Transcript a = Transcript::fiat_shamir("dom");
  Transcript b = Transcript::fiat_shamir("dom");
  a.absorb("m", bytes("hello"), Sender::kProver);
  b.absorb("m", bytes("hello"), Sender::kProver);
  EXPECT_EQ(a.challenge_scalar("c"), b.challenge_scalar("c"));
  EXPECT_EQ(a.challenge_scalar("c"), b.challenge_scalar("c"));
}

TEST(FiatShamir, EveryInputIsBound) {
  const auto run = [](std::string_view domain, std::string_view label, std::string_view msg, std::string_view clabel) {
    Transcript t = Transcript::fiat_shamir(domain);
    t.absorb(label, bytes(msg), Sender::kProver);
    return t.challenge_scalar(clabel);
  };
  const Scalar base = run("dom", "m", "hello", "c");
  EXPECT_NE(base, run("dom2", "m", "hello", "c"));
  EXPECT_NE(base, run("dom", "m2", "hello", "c"));
  EXPECT_NE(base, run("dom", "m", "hellp", "c"));
  EXPECT_NE(base, run("dom", "m", "hello", "c2"));
  // Label/message boundaries are length-prefixed.
  EXPECT_NE(run("dom", "ab", "c", "x"), run("dom", "a", "bc", "x"));
}

TEST(FiatShamir, RepeatedChallengesDiffer) {
  Transcript t = Transcript::fiat_shamir();
  std::set<std::string> seen;
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(seen.insert(t.challenge_scalar("c").to_string()).second);
  const ScalarVector v = t.challenge_vector("v", 8);
  for (const Scalar& x : v) EXPECT_FALSE(x.is_zero());
}

TEST(FiatShamir, BindIsUncountedButBinding) {
  Transcript a = Transcript::fiat_shamir();
  Transcript b = Transcript::fiat_shamir();
  a.bind_u64("n", 16);
  b.bind_u64("n", 17);
  EXPECT_NE(a.challenge_scalar("c"), b.challenge_scalar("c"));
  EXPECT_EQ(a.prover_bytes(), 0u);
  // A bound value is domain-separated from the same bytes sent by the prover.
  Transcript c = Transcript::fiat_shamir();
  Transcript d = Transcript::fiat_shamir();
  c.bind("x", bytes("abc"));
  d.absorb("x", bytes("abc"), Sender::kProver);
  EXPECT_NE(c.challenge_scalar("c"), d.challenge_scalar("c"));
}

TEST(FiatShamir, CountsProverBytes) {
  Transcript t = Transcript::fiat_shamir();
  t.absorb_scalar("s", Scalar(3));
  t.absorb_point("p", GroupElement());
  EXPECT_EQ(t.prover_bytes(), kScalarBytes + kPointBytes);
  t.challenge_scalar("c");
  EXPECT_EQ(t.verifier_bytes(), 0u);
}

TEST(Interactive, SeedDeterminesChallengesAndBytesAreCounted) {
  const Transcript::Seed seed = Transcript::random_seed();
  Transcript p = Transcript::interactive(seed);
  Transcript v = Transcript::interactive(seed);
  p.absorb("m", bytes("xyz"), Sender::kProver);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(p.challenge_scalar("c"), v.challenge_scalar("c"));
  EXPECT_EQ(p.verifier_bytes(), 5 * kScalarBytes);
  EXPECT_EQ(p.prover_bytes(), 3u);
  Transcript other = Transcript::interactive(Transcript::random_seed());
  Transcript fresh = Transcript::interactive(seed);
  EXPECT_NE(other.challenge_scalar("c"), fresh.challenge_scalar("c"));
  EXPECT_EQ(p.mode(), TranscriptMode::kInteractive);
}

TEST(Interactive, ChallengesLookUniform) {
  // Low byte of 4000 challenges: a chi-square test over 16 nibble buckets.
  Transcript t = Transcript::interactive(Transcript::Seed{});
  std::array<int, 16> buckets{};
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) ++buckets[t.challenge_scalar("c").to_bytes()[0] & 15];
  double chi2 = 0;
  const double expected = draws / 16.0;
  for (int b : buckets) chi2 += (b - expected) * (b - expected) / expected;
  EXPECT_LT(chi2, 37.7);  // p = 0.001 at 15 degrees of freedom
}

}  // namespace
}  // namespace ra
