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

#include "ra/field.hpp"

#if defined(__x86_64__)
#include <x86intrin.h>
#endif

namespace ra {
namespace detail {

inline uint8_t adc(uint8_t carry, uint64_t a, uint64_t b, uint64_t& out) {
#if defined(__x86_64__)
  unsigned long long r;
  carry = _addcarry_u64(carry, a, b, &r);
  out = r;
  return carry;
#else
  const u128 s = u128(a) + b + carry;
  out = uint64_t(s);
  return uint8_t(s >> 64);
#endif
}

inline uint8_t sbb(uint8_t borrow, uint64_t a, uint64_t b, uint64_t& out) {
#if defined(__x86_64__)
  unsigned long long r;
  borrow = _subborrow_u64(borrow, a, b, &r);
  out = r;
  return borrow;
#else
  const u128 d = u128(a) - b - borrow;
  out = uint64_t(d);
  return uint8_t(d >> 64) & 1;
#endif
}


#if defined(__x86_64__) && defined(__BMI2__) && defined(__ADX__) && defined(__OPTIMIZE__)
#define RA_FIELD_MULX 1
// Schoolbook product with two carry chains, then t_lo + t_hi * kC. Leaves the
// low four limbs in r and the overflow word in top.
inline void mul_reduce_mulx(const uint64_t* a, const uint64_t* b, uint64_t* r, uint64_t& top) {
  __asm__ (
    // row 0
    "movq 0(%[b]), %%rdx\n\t"
    "mulxq 0(%[a]), %%r8, %%r9\n\t"
    "mulxq 8(%[a]), %%rax, %%r10\n\t"
    "addq %%rax, %%r9\n\t"
    "mulxq 16(%[a]), %%rax, %%r11\n\t"
    "adcq %%rax, %%r10\n\t"
    "mulxq 24(%[a]), %%rax, %%r12\n\t"
    "adcq %%rax, %%r11\n\t"
    "adcq $0, %%r12\n\t"
    "movq %%r8, 0(%[r])\n\t"
    // row 1: acc r9 r10 r11 r12
    "movq 8(%[b]), %%rdx\n\t"
    "xorl %%r13d, %%r13d\n\t"
    "mulxq 0(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r9\n\t"
    "adcxq %%rcx, %%r10\n\t"
    "mulxq 8(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r10\n\t"
    "adcxq %%rcx, %%r11\n\t"
    "mulxq 16(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r11\n\t"
    "adcxq %%rcx, %%r12\n\t"
    "mulxq 24(%[a]), %%rax, %%r8\n\t"
    "adoxq %%rax, %%r12\n\t"
    "adcxq %%r13, %%r8\n\t"
    "adoxq %%r13, %%r8\n\t"
    "movq %%r9, 8(%[r])\n\t"
    // row 2: acc r10 r11 r12 r8
    "movq 16(%[b]), %%rdx\n\t"
    "xorl %%r13d, %%r13d\n\t"
    "mulxq 0(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r10\n\t"
    "adcxq %%rcx, %%r11\n\t"
    "mulxq 8(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r11\n\t"
    "adcxq %%rcx, %%r12\n\t"
    "mulxq 16(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r12\n\t"
    "adcxq %%rcx, %%r8\n\t"
    "mulxq 24(%[a]), %%rax, %%r9\n\t"
    "adoxq %%rax, %%r8\n\t"
    "adcxq %%r13, %%r9\n\t"
    "adoxq %%r13, %%r9\n\t"
    "movq %%r10, 16(%[r])\n\t"
    // row 3: acc r11 r12 r8 r9
    "movq 24(%[b]), %%rdx\n\t"
    "xorl %%r13d, %%r13d\n\t"
    "mulxq 0(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r11\n\t"
    "adcxq %%rcx, %%r12\n\t"
    "mulxq 8(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r12\n\t"
    "adcxq %%rcx, %%r8\n\t"
    "mulxq 16(%[a]), %%rax, %%rcx\n\t"
    "adoxq %%rax, %%r8\n\t"
    "adcxq %%rcx, %%r9\n\t"
    "mulxq 24(%[a]), %%rax, %%r10\n\t"
    "adoxq %%rax, %%r9\n\t"
    "adcxq %%r13, %%r10\n\t"
    "adoxq %%r13, %%r10\n\t"
    "movq %%r11, 24(%[r])\n\t"
    // high limbs r12 r8 r9 r10; reduce by kC
    "movabsq $0x1000003D1, %%rdx\n\t"
    "xorl %%r13d, %%r13d\n\t"
    "mulxq %%r12, %%rax, %%r11\n\t"   // lo0 rax, hi0 r11
    "movq 0(%[r]), %%r12\n\t"
    "adoxq %%rax, %%r12\n\t"          // r0
    "movq %%r12, 0(%[r])\n\t"
    "mulxq %%r8, %%rax, %%rcx\n\t"    // lo1 rax, hi1 rcx
    "movq 8(%[r]), %%r8\n\t"
    "adoxq %%rax, %%r8\n\t"
    "adcxq %%r11, %%r8\n\t"           // r1
    "movq %%r8, 8(%[r])\n\t"
    "mulxq %%r9, %%rax, %%r11\n\t"    // lo2 rax, hi2 r11
    "movq 16(%[r]), %%r9\n\t"
    "adoxq %%rax, %%r9\n\t"
    "adcxq %%rcx, %%r9\n\t"           // r2
    "movq %%r9, 16(%[r])\n\t"
    "mulxq %%r10, %%rax, %%rcx\n\t"   // lo3 rax, hi3 rcx
    "movq 24(%[r]), %%r10\n\t"
    "adoxq %%rax, %%r10\n\t"
    "adcxq %%r11, %%r10\n\t"          // r3
    "movq %%r10, 24(%[r])\n\t"
    "adoxq %%r13, %%rcx\n\t"
    "adcxq %%r13, %%rcx\n\t"
    "movq %%rcx, %[top]\n\t"
    : [top] "=&r"(top), "=m"(*reinterpret_cast<uint64_t(*)[4]>(r))
    : [a] "r"(a), [b] "r"(b), [r] "r"(r), "m"(*reinterpret_cast<const uint64_t(*)[4]>(a)),
      "m"(*reinterpret_cast<const uint64_t(*)[4]>(b))
    : "rax", "rcx", "rdx", "r8", "r9", "r10", "r11", "r12", "r13", "cc");
}
#endif

}  // namespace detail

/// Coordinate field of secp256k1, p = 2^256 - 2^32 - 977. Elements are kept
/// in plain (non-Montgomery) form and reduced with the sparse modulus.
class Secp256k1Fq {
 public:
  static constexpr Limbs kP = Secp256k1Base::kValue;
  static constexpr uint64_t kC = 0x1000003D1ULL;  // 2^256 - p

  constexpr Secp256k1Fq() = default;
  constexpr explicit Secp256k1Fq(uint64_t v) : v_{v, 0, 0, 0} {}

  static constexpr Secp256k1Fq zero() { return Secp256k1Fq(); }
  static constexpr Secp256k1Fq one() { return Secp256k1Fq(1); }

  static Secp256k1Fq from_canonical(const Limbs& x) {
    if (detail::geq(x, kP)) throw FieldError("non-canonical coordinate");
    Secp256k1Fq r;
    r.v_ = x;
    return r;
  }

  constexpr const Limbs& to_limbs() const { return v_; }
  constexpr const Limbs& mont_limbs() const { return v_; }
  constexpr bool is_zero() const { return v_ == Limbs{}; }

  friend constexpr bool operator==(const Secp256k1Fq& a, const Secp256k1Fq& b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(const Secp256k1Fq& a, const Secp256k1Fq& b) { return a.v_ != b.v_; }

  friend Secp256k1Fq operator+(const Secp256k1Fq& a, const Secp256k1Fq& b) {
    // a + b < 2p. Subtracting p is adding kC mod 2^256; keep that sum when
    // either addition carried out.
    using detail::adc;
    uint64_t s[4], t[4];
    uint8_t c = 0;
    for (int i = 0; i < 4; ++i) c = adc(c, a.v_[i], b.v_[i], s[i]);
    uint8_t d = adc(0, s[0], kC, t[0]);
    for (int i = 1; i < 4; ++i) d = adc(d, s[i], 0, t[i]);
    const uint64_t mask = uint64_t(0) - uint64_t(c | d);
    Secp256k1Fq r;
    for (int i = 0; i < 4; ++i) r.v_[i] = (t[i] & mask) | (s[i] & ~mask);
    return r;
  }
  friend Secp256k1Fq operator-(const Secp256k1Fq& a, const Secp256k1Fq& b) {
    using detail::sbb;
    Secp256k1Fq r;
    uint8_t c = 0;
    for (int i = 0; i < 4; ++i) c = sbb(c, a.v_[i], b.v_[i], r.v_[i]);
    // On borrow add p, i.e. subtract kC mod 2^256.
    c = sbb(0, r.v_[0], kC & (uint64_t(0) - c), r.v_[0]);
    for (int i = 1; i < 4; ++i) c = sbb(c, r.v_[i], 0, r.v_[i]);
    return r;
  }
  Secp256k1Fq operator-() const { return Secp256k1Fq() - *this; }

  friend Secp256k1Fq operator*(const Secp256k1Fq& a, const Secp256k1Fq& b) {
#ifdef RA_FIELD_MULX
    uint64_t r[4], top;
    detail::mul_reduce_mulx(a.v_.data(), b.v_.data(), r, top);
    return fold_top(r, top);
#else
    using detail::u128;
    uint64_t t[8];
    u128 acc = 0;
    for (int j = 0; j < 4; ++j) {
      acc += u128(a.v_[j]) * b.v_[0];
      t[j] = uint64_t(acc);
      acc >>= 64;
    }
    t[4] = uint64_t(acc);
    for (int i = 1; i < 4; ++i) {
      acc = 0;
      for (int j = 0; j < 4; ++j) {
        acc += u128(a.v_[j]) * b.v_[i] + t[i + j];
        t[i + j] = uint64_t(acc);
        acc >>= 64;
      }
      t[i + 4] = uint64_t(acc);
    }
    return reduce(t);
#endif
  }

  Secp256k1Fq square() const {
#ifdef RA_FIELD_MULX
    return *this * *this;
#else
    using detail::u128;
    const Limbs& a = v_;
    uint64_t t[8] = {};
    // Off-diagonal products once, doubled, plus the squares.
    u128 acc = 0;
    for (int j = 1; j < 4; ++j) {
      acc += u128(a[0]) * a[j];
      t[j] = uint64_t(acc);
      acc >>= 64;
    }
    t[4] = uint64_t(acc);
    acc = 0;
    for (int j = 2; j < 4; ++j) {
      acc += u128(a[1]) * a[j] + t[1 + j];
      t[1 + j] = uint64_t(acc);
      acc >>= 64;
    }
    t[5] = uint64_t(acc);
    acc = u128(a[2]) * a[3] + t[5];
    t[5] = uint64_t(acc);
    t[6] = uint64_t(acc >> 64);
    t[7] = t[6] >> 63;
    for (int i = 6; i > 0; --i) t[i] = (t[i] << 1) | (t[i - 1] >> 63);
    acc = 0;
    for (int i = 0; i < 4; ++i) {
      const u128 sq = u128(a[i]) * a[i];
      acc += u128(t[2 * i]) + uint64_t(sq);
      t[2 * i] = uint64_t(acc);
      acc >>= 64;
      acc += u128(t[2 * i + 1]) + uint64_t(sq >> 64);
      t[2 * i + 1] = uint64_t(acc);
      acc >>= 64;
    }
    return reduce(t);
#endif
  }

  /// Multiplication by a small constant.
  Secp256k1Fq mul_small(uint32_t k) const {
    using detail::u128;
    uint64_t r[4];
    u128 acc = 0;
    for (int i = 0; i < 4; ++i) {
      acc += u128(v_[i]) * k;
      r[i] = uint64_t(acc);
      acc >>= 64;
    }
    return fold_top(r, uint64_t(acc));
  }

  Secp256k1Fq& operator+=(const Secp256k1Fq& b) { return *this = *this + b; }
  Secp256k1Fq& operator-=(const Secp256k1Fq& b) { return *this = *this - b; }
  Secp256k1Fq& operator*=(const Secp256k1Fq& b) { return *this = *this * b; }

  Secp256k1Fq pow(const Limbs& e) const {
    Secp256k1Fq result = one();
    for (int i = detail::bit_length(e) - 1; i >= 0; --i) {
      result = result.square();
      if ((e[i / 64] >> (i % 64)) & 1) result *= *this;
    }
    return result;
  }

  Secp256k1Fq inverse() const {
    if (is_zero()) throw FieldError("inverse of zero");
    // x^(p-2) via a fixed addition chain: 255 squarings, 15 multiplications.
    const Secp256k1Fq& a = *this;
    const Secp256k1Fq x2 = a.square() * a;
    const Secp256k1Fq x3 = x2.square() * a;
    const Secp256k1Fq x22 = chain_upto_x22(x2, x3);
    const Secp256k1Fq x223 = chain_x223(x22, x3);
    Secp256k1Fq t = x223.sqr_n(23) * x22;
    t = t.sqr_n(5) * a;
    t = t.sqr_n(3) * x2;
    return t.sqr_n(2) * a;
  }

  /// Square root when one exists, x^((p+1)/4).
  Secp256k1Fq sqrt_candidate() const {
    const Secp256k1Fq& a = *this;
    const Secp256k1Fq x2 = a.square() * a;
    const Secp256k1Fq x3 = x2.square() * a;
    const Secp256k1Fq x22 = chain_upto_x22(x2, x3);
    const Secp256k1Fq x223 = chain_x223(x22, x3);
    Secp256k1Fq t = x223.sqr_n(23) * x22;
    t = t.sqr_n(6) * x2;
    return t.sqr_n(2);
  }

 private:
  Secp256k1Fq sqr_n(int n) const {
    Secp256k1Fq r = *this;
    for (int i = 0; i < n; ++i) r = r.square();
    return r;
  }

  // x_k denotes x^(2^k - 1).
  static Secp256k1Fq chain_upto_x22(const Secp256k1Fq& x2, const Secp256k1Fq& x3) {
    const Secp256k1Fq x6 = x3.sqr_n(3) * x3;
    const Secp256k1Fq x9 = x6.sqr_n(3) * x3;
    const Secp256k1Fq x11 = x9.sqr_n(2) * x2;
    return x11.sqr_n(11) * x11;
  }
  static Secp256k1Fq chain_x223(const Secp256k1Fq& x22, const Secp256k1Fq& x3) {
    const Secp256k1Fq x44 = x22.sqr_n(22) * x22;
    const Secp256k1Fq x88 = x44.sqr_n(44) * x44;
    const Secp256k1Fq x176 = x88.sqr_n(88) * x88;
    const Secp256k1Fq x220 = x176.sqr_n(44) * x44;
    return x220.sqr_n(3) * x3;
  }

  static Secp256k1Fq reduce(const uint64_t t[8]) {
    using detail::u128;
    // t_lo + t_hi * kC, then fold the small top limb once more.
    uint64_t r[4];
    u128 acc = 0;
    for (int i = 0; i < 4; ++i) {
      acc += u128(t[i + 4]) * kC + t[i];
      r[i] = uint64_t(acc);
      acc >>= 64;
    }
    return fold_top(r, uint64_t(acc));
  }

  // r + top * 2^256 with top < 2^34.
  static Secp256k1Fq fold_top(const uint64_t r[4], uint64_t top) {
    using detail::adc;
    const detail::u128 m = detail::u128(top) * kC;
    uint64_t o[4], t[4];
    uint8_t c = adc(0, r[0], uint64_t(m), o[0]);
    c = adc(c, r[1], uint64_t(m >> 64), o[1]);
    c = adc(c, r[2], 0, o[2]);
    c = adc(c, r[3], 0, o[3]);
    // A second wrap leaves a value below kC^2, so adding kC cannot carry.
    o[0] += kC & (uint64_t(0) - c);
    // o >= p iff o + kC carries out.
    c = adc(0, o[0], kC, t[0]);
    for (int i = 1; i < 4; ++i) c = adc(c, o[i], 0, t[i]);
    const uint64_t mask = uint64_t(0) - c;
    Secp256k1Fq out;
    for (int i = 0; i < 4; ++i) out.v_[i] = (t[i] & mask) | (o[i] & ~mask);
    return out;
  }

  Limbs v_{};
};

}  // namespace ra
