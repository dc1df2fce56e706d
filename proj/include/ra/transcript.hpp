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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "ra/field.hpp"
#include "ra/group.hpp"

namespace ra {

enum class TranscriptMode : uint8_t { kFiatShamir = 0, kInteractive = 1 };
enum class Sender : uint8_t { kProver = 0, kVerifier = 1 };

/// Challenge source plus byte accounting for one proving session.
///
/// Fiat-Shamir: challenges are a hash of every labelled message absorbed so
/// far. Interactive: challenges come from a ChaCha20 stream keyed by the
/// verifier's seed and are counted as verifier-sent bytes; a prover and a
/// verifier holding transcripts with the same seed see the same challenges,
/// which simulates the channel in-process.
///
/// Every challenge is nonzero. Single-owner; not for concurrent use.
class Transcript {
 public:
  using Seed = std::array<uint8_t, 32>;

  static Transcript fiat_shamir(std::string_view domain = "rangearith/v1");
  static Transcript interactive(const Seed& seed);
  static Seed random_seed();

  void absorb(std::string_view label, std::span<const uint8_t> msg, Sender sender);
  void absorb_scalar(std::string_view label, const Scalar& s, Sender sender = Sender::kProver);
  void absorb_point(std::string_view label, const GroupElement& p, Sender sender = Sender::kProver);

  /// Binds public statement data (known to both sides, never sent). Not
  /// counted; a no-op in interactive mode.
  void bind(std::string_view label, std::span<const uint8_t> msg);
  void bind_point(std::string_view label, const GroupElement& p);
  void bind_u64(std::string_view label, uint64_t v);

  Scalar challenge_scalar(std::string_view label);
  ScalarVector challenge_vector(std::string_view label, std::size_t count);

  TranscriptMode mode() const { return mode_; }
  uint64_t prover_bytes() const { return prover_bytes_; }
  uint64_t verifier_bytes() const { return verifier_bytes_; }

 private:
  static constexpr uint64_t kChallengeBytes = Scalar::kBytes;
  static constexpr uint8_t kPublicTag = 2;

  Transcript() = default;
  void mix(std::string_view label, std::span<const uint8_t> msg, uint8_t tag);

  TranscriptMode mode_ = TranscriptMode::kFiatShamir;
  std::array<uint8_t, 32> state_{};  // hash chain (FS) or stream key (interactive)
  uint64_t stream_block_ = 0;
  uint64_t prover_bytes_ = 0;
  uint64_t verifier_bytes_ = 0;
};

}  // namespace ra
