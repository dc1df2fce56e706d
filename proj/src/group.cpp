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

#include "group_internal.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <unordered_set>

namespace ra {

namespace {

const BaseField kCurveB = BaseField(7);

BaseField times2(const BaseField& a) { return a + a; }

std::optional<BaseField> sqrt_base(const BaseField& a) {
  const BaseField r = a.sqrt_candidate();
  if (r.square() != a) return std::nullopt;
  return r;
}


}  // namespace

namespace detail {

std::vector<int8_t> wnaf(const Limbs& k_in, int w) {
  std::array<uint64_t, 5> k{k_in[0], k_in[1], k_in[2], k_in[3], 0};
  auto is_zero = [&] { return std::all_of(k.begin(), k.end(), [](uint64_t x) { return x == 0; }); };
  std::vector<int8_t> out;
  out.reserve(258);
  const int64_t window = int64_t(1) << w;
  while (!is_zero()) {
    int64_t d = 0;
    if (k[0] & 1) {
      d = int64_t(k[0] & uint64_t(window - 1));
      if (d >= window / 2) d -= window;
      if (d > 0) {
        // k -= d
        uint64_t borrow = uint64_t(d);
        for (auto& limb : k) {
          uint64_t prev = limb;
          limb -= borrow;
          borrow = prev < borrow ? 1 : 0;
          if (!borrow) break;
        }
      } else {
        uint64_t carry = uint64_t(-d);
        for (auto& limb : k) {
          limb += carry;
          carry = limb < carry ? 1 : 0;
          if (!carry) break;
        }
      }
    }
    out.push_back(int8_t(d));
    for (int i = 0; i < 4; ++i) k[i] = (k[i] >> 1) | (k[i + 1] << 63);
    k[4] >>= 1;
  }
  return out;
}

std::vector<GroupElement> odd_multiples(const GroupElement& p, int w) {
  const std::size_t count = std::size_t(1) << (w - 2);
  std::vector<GroupElement> table(count);
  table[0] = p;
  const GroupElement twice = p.dbl();
  for (std::size_t i = 1; i < count; ++i) table[i] = table[i - 1] + twice;
  return table;
}

const Limbs& half_order() {
  static const Limbs h = [] {
    Limbs v = Scalar::kP;
    for (int i = 0; i < 4; ++i) {
      v[i] >>= 1;
      if (i < 3) v[i] |= v[i + 1] << 63;
    }
    return v;
  }();
  return h;
}

}  // namespace detail

GroupElement GroupElement::from_affine(const AffinePoint& p) {
  GroupElement r;
  if (p.infinity) return r;
  r.x_ = p.x;
  r.y_ = p.y;
  r.z_ = BaseField::one();
  return r;
}

AffinePoint GroupElement::to_affine() const {
  if (is_identity()) return AffinePoint{};
  const BaseField zinv = z_.inverse();
  const BaseField zinv2 = zinv.square();
  return AffinePoint{x_ * zinv2, y_ * zinv2 * zinv, false};
}

GroupElement GroupElement::dbl() const {
  if (is_identity()) return *this;
  const BaseField a = x_.square();
  const BaseField b = y_.square();
  const BaseField c = b.square();
  const BaseField d = times2((x_ + b).square() - a - c);
  const BaseField e = a.mul_small(3);
  const BaseField f = e.square();
  GroupElement r;
  r.x_ = f - times2(d);
  const BaseField c8 = c.mul_small(8);
  r.y_ = e * (d - r.x_) - c8;
  r.z_ = times2(y_ * z_);
  return r;
}

GroupElement GroupElement::add_affine(const AffinePoint& q) const {
  if (q.infinity) return *this;
  if (is_identity()) return from_affine(q);
  const BaseField z1z1 = z_.square();
  const BaseField u2 = q.x * z1z1;
  const BaseField s2 = q.y * z_ * z1z1;
  const BaseField h = u2 - x_;
  const BaseField r = times2(s2 - y_);
  if (h.is_zero()) {
    if (r.is_zero()) return dbl();
    return GroupElement();
  }
  const BaseField hh = h.square();
  const BaseField i = hh.mul_small(4);
  const BaseField j = h * i;
  const BaseField v = x_ * i;
  GroupElement out;
  out.x_ = r.square() - j - times2(v);
  out.y_ = r * (v - out.x_) - times2(y_ * j);
  out.z_ = (z_ + h).square() - z1z1 - hh;
  return out;
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  const BaseField z1z1 = a.z_.square();
  const BaseField z2z2 = b.z_.square();
  const BaseField u1 = a.x_ * z2z2;
  const BaseField u2 = b.x_ * z1z1;
  const BaseField s1 = a.y_ * b.z_ * z2z2;
  const BaseField s2 = b.y_ * a.z_ * z1z1;
  const BaseField h = u2 - u1;
  const BaseField r = times2(s2 - s1);
  if (h.is_zero()) {
    if (r.is_zero()) return a.dbl();
    return GroupElement();
  }
  const BaseField i = times2(h).square();
  const BaseField j = h * i;
  const BaseField v = u1 * i;
  GroupElement out;
  out.x_ = r.square() - j - times2(v);
  out.y_ = r * (v - out.x_) - times2(s1 * j);
  out.z_ = ((a.z_ + b.z_).square() - z1z1 - z2z2) * h;
  return out;
}

GroupElement GroupElement::operator-() const {
  GroupElement r = *this;
  r.y_ = -r.y_;
  return r;
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  if (a.is_identity() || b.is_identity()) return a.is_identity() && b.is_identity();
  const BaseField z1z1 = a.z_.square();
  const BaseField z2z2 = b.z_.square();
  if (a.x_ * z2z2 != b.x_ * z1z1) return false;
  return a.y_ * z2z2 * b.z_ == b.y_ * z1z1 * a.z_;
}

GroupElement::Encoding GroupElement::to_bytes() const {
  Encoding out{};
  if (is_identity()) return out;
  const AffinePoint a = to_affine();
  const Limbs x = a.x.to_limbs();
  const Limbs y = a.y.to_limbs();
  out[0] = uint8_t(0x02 | (y[0] & 1));
  for (int i = 0; i < 32; ++i) out[32 - i] = uint8_t(x[i / 8] >> (8 * (i % 8)));
  return out;
}

GroupElement GroupElement::from_bytes(std::span<const uint8_t> in) {
  if (in.size() != kEncodedSize) throw GroupError("group element encoding must be 33 bytes");
  if (in[0] == 0) {
    if (std::any_of(in.begin() + 1, in.end(), [](uint8_t b) { return b != 0; })) {
      throw GroupError("malformed identity encoding");
    }
    return GroupElement();
  }
  if (in[0] != 0x02 && in[0] != 0x03) throw GroupError("bad point prefix");
  Limbs x{};
  for (int i = 0; i < 32; ++i) x[i / 8] |= uint64_t(in[32 - i]) << (8 * (i % 8));
  if (detail::geq(x, BaseField::kP)) throw GroupError("point x coordinate not canonical");
  const BaseField fx = BaseField::from_canonical(x);
  auto y = sqrt_base(fx.square() * fx + kCurveB);
  if (!y) throw GroupError("point not on curve");
  if ((y->to_limbs()[0] & 1) != (in[0] & 1)) *y = -*y;
  return from_affine(AffinePoint{fx, *y, false});
}

std::string GroupElement::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (uint8_t b : to_bytes()) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

std::vector<AffinePoint> batch_to_affine(std::span<const GroupElement> points) {
  std::vector<AffinePoint> out(points.size());
  std::vector<BaseField> zs;
  std::vector<std::size_t> idx;
  zs.reserve(points.size());
  idx.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_identity()) {
      zs.push_back(points[i].z_);
      idx.push_back(i);
    }
  }
  batch_invert<BaseField>(zs);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const GroupElement& p = points[idx[j]];
    const BaseField zinv2 = zs[j].square();
    out[idx[j]] = AffinePoint{p.x_ * zinv2, p.y_ * zinv2 * zs[j], false};
  }
  return out;
}

GroupElement hash_to_group(std::span<const uint8_t> msg) {
  static const char* kDomain = "rangearith/hash-to-group/v1";
  for (uint32_t ctr = 0;; ++ctr) {
    crypto_hash_sha256_state st;
    crypto_hash_sha256_init(&st);
    crypto_hash_sha256_update(&st, reinterpret_cast<const uint8_t*>(kDomain), std::strlen(kDomain));
    crypto_hash_sha256_update(&st, msg.data(), msg.size());
    uint8_t c[4] = {uint8_t(ctr), uint8_t(ctr >> 8), uint8_t(ctr >> 16), uint8_t(ctr >> 24)};
    crypto_hash_sha256_update(&st, c, sizeof c);
    uint8_t digest[crypto_hash_sha256_BYTES];
    crypto_hash_sha256_final(&st, digest);
    Limbs x{};
    for (int i = 0; i < 32; ++i) x[i / 8] |= uint64_t(digest[31 - i]) << (8 * (i % 8));
    if (detail::geq(x, BaseField::kP)) continue;
    const BaseField fx = BaseField::from_canonical(x);
    auto y = sqrt_base(fx.square() * fx + kCurveB);
    if (!y) continue;
    // Parity taken from a digest byte not used for x's low bits.
    if ((y->to_limbs()[0] & 1) != (digest[0] & 1)) *y = -*y;
    return GroupElement::from_affine(AffinePoint{fx, *y, false});
  }
}

std::span<const AffinePoint> GeneratorSet::g_slice(std::size_t n) const {
  if (n > g.size()) throw GroupError("generator set too small: need " + std::to_string(n) + ", have " + std::to_string(g.size()));
  return std::span<const AffinePoint>(g).first(n);
}

std::span<const AffinePoint> GeneratorSet::h_slice(std::size_t n) const {
  if (n > h.size()) throw GroupError("generator set too small: need " + std::to_string(n) + ", have " + std::to_string(h.size()));
  return std::span<const AffinePoint>(h).first(n);
}

GeneratorSet derive_generators(std::span<const uint8_t> seed, std::size_t tau) {
  if (tau == 0) throw GroupError("derive_generators: tau must be >= 1");
  auto derive = [&](char role, uint64_t index) {
    std::vector<uint8_t> msg;
    const uint64_t len = seed.size();
    for (int i = 0; i < 8; ++i) msg.push_back(uint8_t(len >> (8 * i)));
    msg.insert(msg.end(), seed.begin(), seed.end());
    msg.push_back(uint8_t(role));
    for (int i = 0; i < 8; ++i) msg.push_back(uint8_t(index >> (8 * i)));
    return hash_to_group(msg);
  };
  std::vector<GroupElement> points;
  points.reserve(2 * tau + 1);
  for (std::size_t i = 0; i < tau; ++i) points.push_back(derive('g', i));
  for (std::size_t i = 0; i < tau; ++i) points.push_back(derive('h', i));
  points.push_back(derive('u', 0));

  GeneratorSet gens;
  gens.seed.assign(seed.begin(), seed.end());
  auto affine = batch_to_affine(points);

  struct LimbHash {
    std::size_t operator()(const Limbs& l) const { return std::size_t(l[0] ^ (l[1] * 31) ^ (l[2] * 131) ^ (l[3] * 1031)); }
  };
  std::unordered_set<Limbs, LimbHash> seen;
  for (const auto& p : affine) {
    if (!seen.insert(p.x.mont_limbs()).second) throw GroupError("derive_generators: duplicate generator");
  }
  gens.g.assign(affine.begin(), affine.begin() + std::ptrdiff_t(tau));
  gens.h.assign(affine.begin() + std::ptrdiff_t(tau), affine.begin() + std::ptrdiff_t(2 * tau));
  gens.u = affine.back();
  return gens;
}

GeneratorSet derive_generators(const std::string& seed, std::size_t tau) {
  return derive_generators(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(seed.data()), seed.size()), tau);
}

GroupElement commit(std::span<const AffinePoint> gens, std::span<const Scalar> a) {
  if (a.size() > gens.size()) throw GroupError("commit: vector longer than generator slice");
  return msm(gens.first(a.size()), a);
}

GroupElement commit(std::span<const AffinePoint> gens, const ScalarVector& a) {
  return commit(gens, std::span<const Scalar>(a.data(), std::size_t(a.size())));
}

GroupElement sum_points(std::span<const AffinePoint> gens) {
  GroupElement acc;
  for (const auto& p : gens) acc = acc.add_affine(p);
  return acc;
}

}  // namespace ra
