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
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ra/base_field.hpp"
#include "ra/field.hpp"

namespace ra {

// The commitment group is secp256k1 (prime order, a = 0, b = 7). The group is
// written additively: commit(a) + commit(b) == commit(a + b).

using BaseField = Secp256k1Fq;

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AffinePoint {
  BaseField x;
  BaseField y;
  bool infinity = true;

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

class GroupElement;
std::vector<AffinePoint> batch_to_affine(std::span<const GroupElement> points);

class GroupElement {
 public:
  static constexpr std::size_t kEncodedSize = 33;
  using Encoding = std::array<uint8_t, kEncodedSize>;

  /// Identity.
  GroupElement() = default;

  static GroupElement identity() { return GroupElement(); }
  static GroupElement from_affine(const AffinePoint& p);

  AffinePoint to_affine() const;
  bool is_identity() const { return z_.is_zero(); }

  GroupElement dbl() const;
  GroupElement add_affine(const AffinePoint& q) const;

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }
  GroupElement operator-() const;
  GroupElement& operator+=(const GroupElement& b) { return *this = *this + b; }
  GroupElement& operator-=(const GroupElement& b) { return *this = *this - b; }

  /// Variable-time scalar multiplication (wNAF).
  friend GroupElement operator*(const Scalar& k, const GroupElement& p);
  friend GroupElement operator*(const GroupElement& p, const Scalar& k) { return k * p; }

  friend bool operator==(const GroupElement& a, const GroupElement& b);
  friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

  /// SEC1 compressed point; the identity encodes as 33 zero bytes.
  Encoding to_bytes() const;
  /// Rejects bad prefixes, x >= p, points off the curve and non-zero padding
  /// on the identity encoding.
  static GroupElement from_bytes(std::span<const uint8_t> in);

  std::string to_hex() const;

 private:
  friend std::vector<AffinePoint> batch_to_affine(std::span<const GroupElement> points);

  BaseField x_ = BaseField::one();
  BaseField y_ = BaseField::one();
  BaseField z_{};
};

/// Normalizes many points with a single field inversion.
std::vector<AffinePoint> batch_to_affine(std::span<const GroupElement> points);

/// sum_i scalars[i] * bases[i], Pippenger bucket method with signed digits.
GroupElement msm(std::span<const AffinePoint> bases, std::span<const Scalar> scalars);
GroupElement msm(std::span<const GroupElement> bases, std::span<const Scalar> scalars);

/// k * points[i] for every i. All points share the scalar's digit expansion,
/// so each step is one batched affine operation across the whole vector.
std::vector<AffinePoint> scale_points(std::span<const AffinePoint> points, const Scalar& k);

/// lo[i] + k * hi[i].
std::vector<AffinePoint> fold_points(std::span<const AffinePoint> lo, std::span<const AffinePoint> hi, const Scalar& k);

/// a[i] + b[i].
std::vector<AffinePoint> add_points(std::span<const AffinePoint> a, std::span<const AffinePoint> b);

/// a*P + b*Q with shared doublings.
GroupElement double_mul(const Scalar& a, const GroupElement& p, const Scalar& b, const GroupElement& q);

/// Deterministic try-and-increment hash onto the curve. Nobody knows discrete
/// logs between outputs for distinct inputs.
GroupElement hash_to_group(std::span<const uint8_t> msg);

/// Public generators g, h (tau each) and u, derived from a seed.
struct GeneratorSet {
  std::vector<uint8_t> seed;
  std::vector<AffinePoint> g;
  std::vector<AffinePoint> h;
  AffinePoint u;

  std::size_t tau() const { return g.size(); }
  std::span<const AffinePoint> g_slice(std::size_t n) const;
  std::span<const AffinePoint> h_slice(std::size_t n) const;
};

/// Pure function of (seed, tau). Throws on tau == 0.
GeneratorSet derive_generators(std::span<const uint8_t> seed, std::size_t tau);
GeneratorSet derive_generators(const std::string& seed, std::size_t tau);

/// Binding (non-hiding) vector commitment sum_i a_i * gens_i. `a` may be
/// shorter than `gens`; longer is an error.
GroupElement commit(std::span<const AffinePoint> gens, std::span<const Scalar> a);
GroupElement commit(std::span<const AffinePoint> gens, const ScalarVector& a);

/// Sum of gens[0..n): the commitment to the all-ones vector.
GroupElement sum_points(std::span<const AffinePoint> gens);

/// A linear combination of points evaluated lazily with one MSM.
class MultiExp {
 public:
  MultiExp() = default;
  MultiExp(const GroupElement& p) { add(Scalar::one(), p); }  // NOLINT(google-explicit-constructor)

  MultiExp& add(const Scalar& k, const AffinePoint& p);
  MultiExp& add(const Scalar& k, const GroupElement& p);
  MultiExp& add(std::span<const Scalar> ks, std::span<const AffinePoint> ps);
  MultiExp& add(const MultiExp& other, const Scalar& k = Scalar::one());

  GroupElement eval() const;

  std::span<const Scalar> scalars() const { return scalars_; }
  std::span<const AffinePoint> points() const { return points_; }
  std::span<const Scalar> loose_scalars() const { return loose_scalars_; }
  std::span<const GroupElement> loose_points() const { return loose_; }

 private:
  std::vector<Scalar> scalars_;
  std::vector<AffinePoint> points_;
  std::vector<Scalar> loose_scalars_;
  std::vector<GroupElement> loose_;
};

}  // namespace ra
