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

#include <sodium.h>

#include <stdexcept>

namespace ra {
namespace {

void init_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialization failed");
}

void put_len(crypto_hash_sha256_state& st, uint64_t n) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = uint8_t(n >> (8 * i));
  crypto_hash_sha256_update(&st, b, 8);
}

void put_str(crypto_hash_sha256_state& st, std::string_view s) {
  put_len(st, s.size());
  crypto_hash_sha256_update(&st, reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

}  // namespace

Transcript Transcript::fiat_shamir(std::string_view domain) {
  init_sodium();
  Transcript t;
  t.mode_ = TranscriptMode::kFiatShamir;
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  put_str(st, "rangearith/transcript/fs");
  put_str(st, domain);
  crypto_hash_sha256_final(&st, t.state_.data());
  return t;
}

Transcript Transcript::interactive(const Seed& seed) {
  init_sodium();
  Transcript t;
  t.mode_ = TranscriptMode::kInteractive;
  t.state_ = seed;
  return t;
}

Transcript::Seed Transcript::random_seed() {
  init_sodium();
  Seed s;
  randombytes_buf(s.data(), s.size());
  return s;
}

void Transcript::absorb(std::string_view label, std::span<const uint8_t> msg, Sender sender) {
  (sender == Sender::kProver ? prover_bytes_ : verifier_bytes_) += msg.size();
  if (mode_ == TranscriptMode::kFiatShamir) mix(label, msg, uint8_t(sender));
}

void Transcript::bind(std::string_view label, std::span<const uint8_t> msg) {
  if (mode_ == TranscriptMode::kFiatShamir) mix(label, msg, kPublicTag);
}

void Transcript::bind_point(std::string_view label, const GroupElement& p) {
  const auto b = p.to_bytes();
  bind(label, b);
}

void Transcript::bind_u64(std::string_view label, uint64_t v) {
  std::array<uint8_t, 8> b;
  for (int i = 0; i < 8; ++i) b[std::size_t(i)] = uint8_t(v >> (8 * i));
  bind(label, b);
}

void Transcript::mix(std::string_view label, std::span<const uint8_t> msg, uint8_t tag) {
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  put_str(st, "absorb");
  crypto_hash_sha256_update(&st, state_.data(), state_.size());
  put_str(st, label);
  crypto_hash_sha256_update(&st, &tag, 1);
  put_len(st, msg.size());
  crypto_hash_sha256_update(&st, msg.data(), msg.size());
  crypto_hash_sha256_final(&st, state_.data());
}

void Transcript::absorb_scalar(std::string_view label, const Scalar& s, Sender sender) {
  const auto b = s.to_bytes();
  absorb(label, b, sender);
}

void Transcript::absorb_point(std::string_view label, const GroupElement& p, Sender sender) {
  const auto b = p.to_bytes();
  absorb(label, b, sender);
}

Scalar Transcript::challenge_scalar(std::string_view label) {
  std::array<uint8_t, 64> wide;
  Scalar out;
  if (mode_ == TranscriptMode::kFiatShamir) {
    for (uint64_t ctr = 0;; ++ctr) {
      crypto_hash_sha512_state st;
      crypto_hash_sha512_init(&st);
      const char tag[] = "challenge";
      crypto_hash_sha512_update(&st, reinterpret_cast<const uint8_t*>(tag), sizeof(tag) - 1);
      crypto_hash_sha512_update(&st, state_.data(), state_.size());
      uint8_t lb[8];
      for (int i = 0; i < 8; ++i) lb[i] = uint8_t(label.size() >> (8 * i));
      crypto_hash_sha512_update(&st, lb, 8);
      crypto_hash_sha512_update(&st, reinterpret_cast<const uint8_t*>(label.data()), label.size());
      for (int i = 0; i < 8; ++i) lb[i] = uint8_t(ctr >> (8 * i));
      crypto_hash_sha512_update(&st, lb, 8);
      crypto_hash_sha512_final(&st, wide.data());
      out = Scalar::from_wide_bytes(wide);
      if (!out.is_zero()) break;
    }
    // Bind the challenge so that repeated labels give fresh values.
    mix(label, out.to_bytes(), uint8_t(Sender::kVerifier));
  } else {
    do {
      uint8_t nonce[crypto_stream_chacha20_ietf_NONCEBYTES] = {};
      for (int i = 0; i < 8; ++i) nonce[i] = uint8_t(stream_block_ >> (8 * i));
      ++stream_block_;
      crypto_stream_chacha20_ietf(wide.data(), wide.size(), nonce, state_.data());
      out = Scalar::from_wide_bytes(wide);
    } while (out.is_zero());
    verifier_bytes_ += kChallengeBytes;
  }
  return out;
}

ScalarVector Transcript::challenge_vector(std::string_view label, std::size_t count) {
  ScalarVector v(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) v[Eigen::Index(i)] = challenge_scalar(label);
  return v;
}

}  // namespace ra
