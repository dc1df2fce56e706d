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
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace ra {

using Limbs = std::array<uint64_t, 4>;

/// Signed integer wide enough for any symmetric residue of a 256-bit prime.
using SignedInt = boost::multiprecision::int512_t;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

using u128 = unsigned __int128;

constexpr bool geq(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

constexpr uint64_t sub_in_place(Limbs& a, const Limbs& b) {
  uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = u128(a[i]) - b[i] - borrow;
    a[i] = uint64_t(d);
    borrow = uint64_t(d >> 64) & 1;
  }
  return borrow;
}

constexpr uint64_t add_in_place(Limbs& a, const Limbs& b) {
  uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = u128(a[i]) + b[i] + carry;
    a[i] = uint64_t(s);
    carry = uint64_t(s >> 64);
  }
  return carry;
}

constexpr int bit_length(const Limbs& a) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != 0) return 64 * i + 64 - __builtin_clzll(a[i]);
  }
  return 0;
}

// (a + a) mod p for a < p.
constexpr Limbs double_mod(Limbs a, const Limbs& p) {
  uint64_t carry = add_in_place(a, a);
  if (carry || geq(a, p)) sub_in_place(a, p);
  return a;
}

}  // namespace detail

/// Prime field F_p with Montgomery representation over four 64-bit limbs.
///
/// `Modulus` supplies `static constexpr Limbs kValue`, an odd prime below
/// 2^256.
template <class Modulus>
class Fp {
 public:
  static constexpr Limbs kP = Modulus::kValue;
  static constexpr int kBits = detail::bit_length(kP);
  static constexpr std::size_t kBytes = (kBits + 7) / 8;

  constexpr Fp() = default;

  /// Small signed integer, reduced mod p.
  constexpr explicit Fp(int64_t v) {
    if (v >= 0) {
      *this = from_limbs_reduce({uint64_t(v), 0, 0, 0});
    } else {
      // -(v) without overflowing on INT64_MIN.
      *this = -from_limbs_reduce({uint64_t(0) - uint64_t(v), 0, 0, 0});
    }
  }

  static constexpr Fp zero() { return Fp(); }
  static constexpr Fp one() { return from_mont(kR); }

  /// Any 256-bit integer, reduced mod p.
  static constexpr Fp from_limbs_reduce(const Limbs& x) {
    Fp r;
    r.v_ = mont_mul(x, kR2);
    return r;
  }

  /// Canonical integer in [0, p); throws otherwise.
  static constexpr Fp from_canonical(const Limbs& x) {
    if (detail::geq(x, kP)) throw FieldError("non-canonical field element");
    return from_limbs_reduce(x);
  }

  /// 512-bit little-endian integer, reduced mod p.
  static Fp from_wide_bytes(std::span<const uint8_t, 64> bytes) {
    Limbs lo{}, hi{};
    for (int i = 0; i < 32; ++i) {
      lo[i / 8] |= uint64_t(bytes[i]) << (8 * (i % 8));
      hi[i / 8] |= uint64_t(bytes[32 + i]) << (8 * (i % 8));
    }
    Fp a = from_limbs_reduce(lo);
    Fp b;
    b.v_ = mont_mul(hi, kR3);
    return a + b;
  }

  static Fp from_signed(const SignedInt& x) {
    SignedInt m = x % to_big(kP);
    if (m < 0) m += to_big(kP);
    Limbs l{};
    for (int i = 0; i < 4; ++i) {
      l[i] = static_cast<uint64_t>(m & SignedInt(~uint64_t(0)));
      m >>= 64;
    }
    return from_canonical(l);
  }

  constexpr Limbs to_limbs() const { return mont_mul(v_, Limbs{1, 0, 0, 0}); }

  /// Representative in [-(p-1)/2, (p-1)/2].
  SignedInt to_symmetric() const {
    SignedInt v = to_big(to_limbs());
    if (v > kHalf()) v -= to_big(kP);
    return v;
  }

  /// Symmetric representative when it fits in 64 bits.
  std::optional<int64_t> symmetric_i64() const {
    SignedInt v = to_symmetric();
    if (v > SignedInt(INT64_MAX) || v < SignedInt(INT64_MIN)) return std::nullopt;
    return static_cast<int64_t>(v);
  }

  constexpr bool is_zero() const { return v_ == Limbs{}; }

  friend constexpr bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend constexpr Fp operator+(Fp a, const Fp& b) {
    uint64_t carry = detail::add_in_place(a.v_, b.v_);
    if (carry || detail::geq(a.v_, kP)) detail::sub_in_place(a.v_, kP);
    return a;
  }
  friend constexpr Fp operator-(Fp a, const Fp& b) {
    if (detail::sub_in_place(a.v_, b.v_)) detail::add_in_place(a.v_, kP);
    return a;
  }
  constexpr Fp operator-() const { return Fp() - *this; }
  friend constexpr Fp operator*(const Fp& a, const Fp& b) {
    Fp r;
    r.v_ = mont_mul(a.v_, b.v_);
    return r;
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  constexpr Fp& operator+=(const Fp& b) { return *this = *this + b; }
  constexpr Fp& operator-=(const Fp& b) { return *this = *this - b; }
  constexpr Fp& operator*=(const Fp& b) { return *this = *this * b; }
  Fp& operator/=(const Fp& b) { return *this = *this / b; }

  constexpr Fp square() const { return *this * *this; }

  constexpr Fp pow(const Limbs& e) const {
    Fp result = one();
    for (int i = detail::bit_length(e) - 1; i >= 0; --i) {
      result = result.square();
      if ((e[i / 64] >> (i % 64)) & 1) result *= *this;
    }
    return result;
  }
  constexpr Fp pow(uint64_t e) const { return pow(Limbs{e, 0, 0, 0}); }

  /// Multiplicative inverse; zero has none.
  Fp inverse() const {
    if (is_zero()) throw FieldError("inverse of zero");
    Limbs e = kP;
    detail::sub_in_place(e, Limbs{2, 0, 0, 0});
    return pow(e);
  }

  /// Canonical little-endian encoding of width kBytes.
  void to_bytes(std::span<uint8_t> out) const {
    if (out.size() != kBytes) throw FieldError("scalar encoding width mismatch");
    const Limbs l = to_limbs();
    for (std::size_t i = 0; i < kBytes; ++i) out[i] = uint8_t(l[i / 8] >> (8 * (i % 8)));
  }
  std::array<uint8_t, kBytes> to_bytes() const {
    std::array<uint8_t, kBytes> out{};
    to_bytes(out);
    return out;
  }
  /// Rejects encodings >= p.
  static Fp from_bytes(std::span<const uint8_t> in) {
    if (in.size() != kBytes) throw FieldError("scalar encoding width mismatch");
    Limbs l{};
    for (std::size_t i = 0; i < kBytes; ++i) l[i / 8] |= uint64_t(in[i]) << (8 * (i % 8));
    return from_canonical(l);
  }

  std::string to_string() const { return to_symmetric().str(); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.to_string(); }

  /// Raw Montgomery limbs, for hashing into containers only.
  constexpr const Limbs& mont_limbs() const { return v_; }

  static SignedInt modulus() { return to_big(kP); }

 private:
  static SignedInt to_big(const Limbs& l) {
    SignedInt v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 64) | SignedInt(l[i]);
    return v;
  }
  static const SignedInt& kHalf() {
    static const SignedInt half = (to_big(kP) - 1) / 2;
    return half;
  }

  static constexpr Fp from_mont(const Limbs& m) {
    Fp r;
    r.v_ = m;
    return r;
  }

  static constexpr uint64_t compute_inv() {
    uint64_t inv = 1;
    for (int i = 0; i < 7; ++i) inv *= 2 - kP[0] * inv;
    return uint64_t(0) - inv;
  }

  static constexpr Limbs pow2_mod(int k) {
    Limbs r{1, 0, 0, 0};
    for (int i = 0; i < k; ++i) r = detail::double_mod(r, kP);
    return r;
  }

  // CIOS Montgomery multiplication: a * b / 2^256 mod p. Requires a*b < p*2^256.
  static constexpr Limbs mont_mul(const Limbs& a, const Limbs& b) {
    using detail::u128;
    uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      u128 carry = 0;
      for (int j = 0; j < 4; ++j) {
        carry += u128(a[j]) * b[i] + t[j];
        t[j] = uint64_t(carry);
        carry >>= 64;
      }
      carry += t[4];
      t[4] = uint64_t(carry);
      t[5] = uint64_t(carry >> 64);

      const uint64_t m = t[0] * kInv;
      carry = (u128(m) * kP[0] + t[0]) >> 64;
      for (int j = 1; j < 4; ++j) {
        carry += u128(m) * kP[j] + t[j];
        t[j - 1] = uint64_t(carry);
        carry >>= 64;
      }
      carry += t[4];
      t[3] = uint64_t(carry);
      t[4] = t[5] + uint64_t(carry >> 64);
    }
    Limbs r{t[0], t[1], t[2], t[3]};
    if (t[4] || detail::geq(r, kP)) detail::sub_in_place(r, kP);
    return r;
  }

  static constexpr uint64_t kInv = compute_inv();
  static constexpr Limbs kR = pow2_mod(256);
  static constexpr Limbs kR2 = pow2_mod(512);
  static constexpr Limbs kR3 = mont_mul(kR2, kR2);

  Limbs v_{};
};

/// Order of the secp256k1 group; the protocol scalar field.
struct Secp256k1Order {
  static constexpr Limbs kValue = {0xBFD25E8CD0364141ULL, 0xBAAEDCE6AF48A03BULL,
                                   0xFFFFFFFFFFFFFFFEULL, 0xFFFFFFFFFFFFFFFFULL};
};

/// Base field of secp256k1.
struct Secp256k1Base {
  static constexpr Limbs kValue = {0xFFFFFFFEFFFFFC2FULL, 0xFFFFFFFFFFFFFFFFULL,
                                   0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL};
};

/// Scalar field of the commitment group. Every protocol scalar lives here.
using Scalar = Fp<Secp256k1Order>;

template <class F>
using Vector = Eigen::Matrix<F, Eigen::Dynamic, 1>;
template <class F>
using Matrix = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ScalarVector = Vector<Scalar>;
using ScalarMatrix = Matrix<Scalar>;

template <class F>
F inner_product(const Vector<F>& a, const Vector<F>& b) {
  if (a.size() != b.size()) throw FieldError("inner product length mismatch");
  F acc{};
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// (1, x, x^2, ..., x^{n-1}).
template <class F>
Vector<F> powers(const F& x, std::size_t n) {
  Vector<F> out(static_cast<Eigen::Index>(n));
  F acc = F::one();
  for (std::size_t i = 0; i < n; ++i) {
    out[static_cast<Eigen::Index>(i)] = acc;
    acc *= x;
  }
  return out;
}

/// Inverts every entry with one field inversion. Entries must be nonzero.
template <class F>
void batch_invert(std::span<F> xs) {
  if (xs.empty()) return;
  std::vector<F> prefix(xs.size());
  F acc = F::one();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    prefix[i] = acc;
    acc *= xs[i];
  }
  F inv = acc.inverse();
  for (std::size_t i = xs.size(); i-- > 0;) {
    F next = inv * xs[i];
    xs[i] = inv * prefix[i];
    inv = next;
  }
}

}  // namespace ra

namespace Eigen {

template <class M>
struct NumTraits<ra::Fp<M>> : GenericNumTraits<ra::Fp<M>> {
  using Real = ra::Fp<M>;
  using NonInteger = ra::Fp<M>;
  using Literal = ra::Fp<M>;
  using Nested = ra::Fp<M>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 20
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
