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

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "group_internal.hpp"
#include "ra/group.hpp"

namespace ra {
namespace {

using boost::multiprecision::cpp_int;

// Below these sizes the one inversion per batched step costs more than it
// saves.
constexpr std::size_t kBatchScaleMin = 48;
constexpr std::size_t kBatchMsmMin = 32;

// ---------------------------------------------------------------------------
// Endomorphism: beta * x maps P to lambda * P.

const BaseField& beta() {
  static const BaseField b = BaseField::from_canonical(
      {0xc1396c28719501eeULL, 0x9cf0497512f58995ULL, 0x6e64479eac3434e9ULL, 0x7ae96a2b657c0710ULL});
  return b;
}

cpp_int to_big(const Limbs& l) {
  cpp_int r = 0;
  for (int i = 3; i >= 0; --i) {
    r <<= 64;
    r += l[std::size_t(i)];
  }
  return r;
}

Limbs to_limbs(cpp_int v) {
  Limbs out{};
  for (auto& limb : out) {
    limb = static_cast<uint64_t>(v & cpp_int(~uint64_t(0)));
    v >>= 64;
  }
  return out;
}

struct HalfScalar {
  Limbs mag;
  bool negative = false;
};

// k = k1 + k2 * lambda (mod n) with |k1|, |k2| around 2^128.
std::array<HalfScalar, 2> glv_split(const Scalar& k) {
  static const cpp_int n = to_big(Scalar::kP);
  static const cpp_int a1("0x3086d221a7d46bcde86c90e49284eb15");
  static const cpp_int b1("-0xe4437ed6010e88286f547fa90abfe4c3");
  static const cpp_int a2("0x114ca50f7a8e2f3f657c1108d9d44cfd8");
  static const cpp_int& b2 = a1;
  const cpp_int kk = to_big(k.to_limbs());
  const cpp_int c1 = (b2 * kk + n / 2) / n;
  const cpp_int c2 = (-b1 * kk + n / 2) / n;
  const cpp_int k1 = kk - c1 * a1 - c2 * a2;
  const cpp_int k2 = -c1 * b1 - c2 * b2;
  auto half = [](const cpp_int& v) { return HalfScalar{to_limbs(abs(v)), v < 0}; };
  return {half(k1), half(k2)};
}

AffinePoint endo(AffinePoint p) {
  if (!p.infinity) p.x *= beta();
  return p;
}

AffinePoint negate(AffinePoint p) {
  p.y = -p.y;
  return p;
}

// ---------------------------------------------------------------------------
// Batched affine arithmetic: many independent additions or doublings share a
// single field inversion.

struct BatchScratch {
  std::vector<BaseField> den;
  std::vector<BaseField> prefix;
  std::vector<uint8_t> slow;

  void resize(std::size_t n) {
    den.resize(n);
    prefix.resize(n);
    slow.resize(n);
  }

  void invert(std::size_t n) {
    if (n == 0) return;
    BaseField acc = BaseField::one();
    for (std::size_t i = 0; i < n; ++i) {
      prefix[i] = acc;
      acc *= den[i];
    }
    BaseField inv = acc.inverse();
    for (std::size_t i = n; i-- > 0;) {
      const BaseField next = inv * den[i];
      den[i] = inv * prefix[i];
      inv = next;
    }
  }
};

AffinePoint add_slow(const AffinePoint& a, const AffinePoint& b) {
  if (a.infinity) return b;
  if (b.infinity) return a;
  return GroupElement::from_affine(a).add_affine(b).to_affine();
}

// acc(i) += addend(i) for i < n. `addend` returns by value and may be called
// more than once per index.
template <class AccFn, class AddFn>
void add_batch(std::size_t n, AccFn&& acc, AddFn&& addend, BatchScratch& s) {
  s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AffinePoint& a = acc(i);
    const AffinePoint b = addend(i);
    const bool slow = a.infinity || b.infinity || a.x == b.x;
    s.slow[i] = slow;
    s.den[i] = slow ? BaseField::one() : b.x - a.x;
  }
  s.invert(n);
  for (std::size_t i = 0; i < n; ++i) {
    AffinePoint& a = acc(i);
    const AffinePoint b = addend(i);
    if (s.slow[i]) {
      a = add_slow(a, b);
      continue;
    }
    const BaseField lambda = (b.y - a.y) * s.den[i];
    const BaseField x3 = lambda.square() - a.x - b.x;
    a.y = lambda * (a.x - x3) - a.y;
    a.x = x3;
  }
}

void double_batch(std::span<AffinePoint> pts, BatchScratch& s) {
  const std::size_t n = pts.size();
  s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // No point of order two exists, so y != 0 off the identity.
    s.slow[i] = pts[i].infinity;
    s.den[i] = pts[i].infinity ? BaseField::one() : pts[i].y + pts[i].y;
  }
  s.invert(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.slow[i]) continue;
    AffinePoint& p = pts[i];
    const BaseField xx = p.x.square();
    const BaseField lambda = (xx + xx + xx) * s.den[i];
    const BaseField x3 = lambda.square() - p.x - p.x;
    p.y = lambda * (p.x - x3) - p.y;
    p.x = x3;
  }
}

// ---------------------------------------------------------------------------
// Straus with the endomorphism for a handful of points.

GroupElement straus(std::span<const AffinePoint> bases, std::span<const Scalar> scalars) {
  constexpr int w = 5;
  struct Stream {
    std::vector<int8_t> digits;
    bool negative;
    std::size_t table;  // offset into `affine`
    bool endo;
  };
  std::vector<Stream> streams;
  std::vector<GroupElement> jac;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i].infinity || scalars[i].is_zero()) continue;
    const auto halves = glv_split(scalars[i]);
    const std::size_t off = jac.size();
    const auto t = detail::odd_multiples(GroupElement::from_affine(bases[i]), w);
    jac.insert(jac.end(), t.begin(), t.end());
    streams.push_back({detail::wnaf(halves[0].mag, w), halves[0].negative, off, false});
    streams.push_back({detail::wnaf(halves[1].mag, w), halves[1].negative, off, true});
  }
  if (streams.empty()) return GroupElement();
  const auto affine = batch_to_affine(jac);
  std::vector<AffinePoint> endo_table(affine.size());
  std::transform(affine.begin(), affine.end(), endo_table.begin(), endo);

  std::size_t len = 0;
  for (const auto& s : streams) len = std::max(len, s.digits.size());
  GroupElement acc;
  for (std::size_t bit = len; bit-- > 0;) {
    acc = acc.dbl();
    for (const auto& s : streams) {
      if (bit >= s.digits.size() || s.digits[bit] == 0) continue;
      const int d = s.digits[bit];
      const std::size_t j = std::size_t(d > 0 ? d : -d) / 2;
      const AffinePoint& q = (s.endo ? endo_table : affine)[s.table + j];
      acc = acc.add_affine(((d < 0) != s.negative) ? negate(q) : q);
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Pippenger.

struct SignedDigits {
  std::vector<int32_t> digits;  // n * windows, point-major
  int windows = 0;
  int width = 0;
};

SignedDigits signed_digits(std::span<const Limbs> mags, int max_bits, int c) {
  SignedDigits out;
  out.width = c;
  out.windows = max_bits / c + 1;
  const int64_t radix = int64_t(1) << c;
  out.digits.resize(mags.size() * std::size_t(out.windows));
  for (std::size_t i = 0; i < mags.size(); ++i) {
    int64_t carry = 0;
    for (int w = 0; w < out.windows; ++w) {
      const int bit = w * c;
      uint64_t bits = 0;
      if (bit < 256) {
        const int limb = bit / 64, off = bit % 64;
        bits = mags[i][std::size_t(limb)] >> off;
        if (off + c > 64 && limb < 3) bits |= mags[i][std::size_t(limb + 1)] << (64 - off);
        bits &= uint64_t(radix - 1);
      }
      int64_t d = int64_t(bits) + carry;
      carry = 0;
      if (d > radix / 2) {
        d -= radix;
        carry = 1;
      }
      out.digits[i * std::size_t(out.windows) + std::size_t(w)] = int32_t(d);
    }
  }
  return out;
}

int choose_width(std::size_t n, int max_bits, double bucket_cost) {
  int best_c = 1;
  double best = 1e300;
  for (int c = 1; c <= 16; ++c) {
    const double windows = double(max_bits / c + 1);
    const double cost = windows * (double(n) + bucket_cost * double(1u << (c - 1)));
    if (cost < best) {
      best = cost;
      best_c = c;
    }
  }
  return best_c;
}

// Sums per-window buckets (affine, possibly infinity) with the running-sum
// trick and combines windows by doubling.
template <class BucketFn>
GroupElement combine_windows(int windows, int c, std::size_t buckets, BucketFn&& bucket) {
  GroupElement acc;
  for (int w = windows - 1; w >= 0; --w) {
    for (int k = 0; k < c; ++k) acc = acc.dbl();
    GroupElement running, total;
    for (std::size_t b = buckets; b-- > 0;) {
      running = bucket(w, b, running);
      total += running;
    }
    acc += total;
  }
  return acc;
}

GroupElement pippenger_jacobian(std::span<const AffinePoint> bases, std::span<const Limbs> mags,
                                std::span<const uint8_t> neg, int max_bits) {
  const std::size_t n = bases.size();
  const int c = choose_width(n, max_bits, 2.0);
  const SignedDigits sd = signed_digits(mags, max_bits, c);
  const std::size_t nb = std::size_t(1) << (c - 1);
  std::vector<GroupElement> buckets(nb * std::size_t(sd.windows));
  for (std::size_t i = 0; i < n; ++i) {
    for (int w = 0; w < sd.windows; ++w) {
      const int32_t d = sd.digits[i * std::size_t(sd.windows) + std::size_t(w)];
      if (d == 0) continue;
      const std::size_t b = std::size_t(w) * nb + std::size_t(d > 0 ? d : -d) - 1;
      buckets[b] = buckets[b].add_affine((bool(neg[i]) != (d < 0)) ? negate(bases[i]) : bases[i]);
    }
  }
  return combine_windows(sd.windows, c, nb, [&](int w, std::size_t b, const GroupElement& running) {
    return running + buckets[std::size_t(w) * nb + b];
  });
}

GroupElement pippenger_batched(std::span<const AffinePoint> bases, std::span<const Limbs> mags,
                               std::span<const uint8_t> neg, int max_bits) {
  const std::size_t n = bases.size();
  const int c = choose_width(n, max_bits, 6.0);
  const SignedDigits sd = signed_digits(mags, max_bits, c);
  const std::size_t nb = std::size_t(1) << (c - 1);
  const std::size_t slots = nb * std::size_t(sd.windows);

  // Group every (window, point) contribution by bucket.
  std::vector<uint32_t> start(slots + 1, 0);
  for (std::size_t i = 0; i < sd.digits.size(); ++i) {
    const int32_t d = sd.digits[i];
    if (d == 0) continue;
    const std::size_t w = i % std::size_t(sd.windows);
    ++start[w * nb + std::size_t(d > 0 ? d : -d)];
  }
  for (std::size_t s = 0; s < slots; ++s) start[s + 1] += start[s];
  std::vector<AffinePoint> pts(start[slots]);
  std::vector<uint32_t> fill(start.begin(), start.end() - 1);
  for (std::size_t i = 0; i < sd.digits.size(); ++i) {
    const int32_t d = sd.digits[i];
    if (d == 0) continue;
    const std::size_t p = i / std::size_t(sd.windows);
    const std::size_t w = i % std::size_t(sd.windows);
    const std::size_t slot = w * nb + std::size_t(d > 0 ? d : -d) - 1;
    pts[fill[slot]++] = (bool(neg[p]) != (d < 0)) ? negate(bases[p]) : bases[p];
  }
  std::vector<uint32_t> len(slots);
  for (std::size_t s = 0; s < slots; ++s) len[s] = start[s + 1] - start[s];

  // Pairwise tree reduction inside each bucket, all buckets per round.
  BatchScratch scratch;
  std::vector<uint32_t> pairs;
  for (;;) {
    pairs.clear();
    for (std::size_t s = 0; s < slots; ++s) {
      for (uint32_t j = 0; j + 1 < len[s]; j += 2) pairs.push_back(start[s] + j);
    }
    if (pairs.empty()) break;
    add_batch(
        pairs.size(), [&](std::size_t k) -> AffinePoint& { return pts[pairs[k]]; },
        [&](std::size_t k) { return pts[pairs[k] + 1]; }, scratch);
    for (std::size_t s = 0; s < slots; ++s) {
      const uint32_t l = len[s];
      if (l < 2) continue;
      for (uint32_t j = 1; j < l / 2; ++j) pts[start[s] + j] = pts[start[s] + 2 * j];
      if (l % 2) pts[start[s] + l / 2] = pts[start[s] + l - 1];
      len[s] = (l + 1) / 2;
    }
  }

  return combine_windows(sd.windows, c, nb, [&](int w, std::size_t b, const GroupElement& running) {
    const std::size_t s = std::size_t(w) * nb + b;
    return len[s] ? running.add_affine(pts[start[s]]) : running;
  });
}

}  // namespace

GroupElement msm(std::span<const AffinePoint> bases, std::span<const Scalar> scalars) {
  if (bases.size() != scalars.size()) throw GroupError("msm: length mismatch");

  // Fold the sign into the base so every magnitude is at most (p-1)/2; small
  // negative fixed-point values then cost as little as small positive ones.
  std::vector<AffinePoint> live;
  std::vector<Scalar> live_scalars;
  std::vector<Limbs> mags;
  std::vector<uint8_t> neg;
  int max_bits = 0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i].infinity || scalars[i].is_zero()) continue;
    Limbs k = scalars[i].to_limbs();
    uint8_t flip = 0;
    if (!detail::geq(detail::half_order(), k)) {
      k = (-scalars[i]).to_limbs();
      flip = 1;
    }
    live.push_back(bases[i]);
    live_scalars.push_back(scalars[i]);
    mags.push_back(k);
    neg.push_back(flip);
    max_bits = std::max(max_bits, detail::bit_length(k));
  }
  if (live.empty()) return GroupElement();
  if (live.size() < 4) return straus(live, live_scalars);
  if (live.size() < kBatchMsmMin) return pippenger_jacobian(live, mags, neg, max_bits);
  return pippenger_batched(live, mags, neg, max_bits);
}

GroupElement msm(std::span<const GroupElement> bases, std::span<const Scalar> scalars) {
  const auto affine = batch_to_affine(bases);
  return msm(std::span<const AffinePoint>(affine), scalars);
}

GroupElement double_mul(const Scalar& a, const GroupElement& p, const Scalar& b, const GroupElement& q) {
  const std::array<GroupElement, 2> pts{p, q};
  const auto affine = batch_to_affine(pts);
  const std::array<Scalar, 2> ks{a, b};
  return straus(affine, ks);
}

GroupElement operator*(const Scalar& k, const GroupElement& p) {
  if (k.is_zero() || p.is_identity()) return GroupElement();
  const std::array<AffinePoint, 1> base{p.to_affine()};
  const std::array<Scalar, 1> ks{k};
  return straus(base, ks);
}

std::vector<AffinePoint> scale_points(std::span<const AffinePoint> points, const Scalar& k) {
  const std::size_t n = points.size();
  std::vector<AffinePoint> acc(n);
  if (k.is_zero() || n == 0) return acc;
  if (n < kBatchScaleMin) {
    std::vector<GroupElement> jac(n);
    for (std::size_t i = 0; i < n; ++i) jac[i] = k * GroupElement::from_affine(points[i]);
    return batch_to_affine(jac);
  }

  constexpr int w = 5;
  constexpr std::size_t kTable = std::size_t(1) << (w - 2);
  BatchScratch scratch;
  // table[j * n + i] = (2j + 1) * points[i]
  std::vector<AffinePoint> table(kTable * n);
  std::copy(points.begin(), points.end(), table.begin());
  std::vector<AffinePoint> twice(points.begin(), points.end());
  double_batch(twice, scratch);
  for (std::size_t j = 1; j < kTable; ++j) {
    std::copy_n(table.begin() + std::ptrdiff_t((j - 1) * n), n, table.begin() + std::ptrdiff_t(j * n));
    add_batch(
        n, [&](std::size_t i) -> AffinePoint& { return table[j * n + i]; }, [&](std::size_t i) { return twice[i]; },
        scratch);
  }
  std::vector<AffinePoint> endo_table(table.size());
  std::transform(table.begin(), table.end(), endo_table.begin(), endo);

  const auto halves = glv_split(k);
  const std::array<std::vector<int8_t>, 2> digits{detail::wnaf(halves[0].mag, w), detail::wnaf(halves[1].mag, w)};
  const std::size_t len = std::max(digits[0].size(), digits[1].size());
  bool started = false;
  for (std::size_t bit = len; bit-- > 0;) {
    if (started) double_batch(acc, scratch);
    for (int s = 0; s < 2; ++s) {
      if (bit >= digits[std::size_t(s)].size() || digits[std::size_t(s)][bit] == 0) continue;
      const int d = digits[std::size_t(s)][bit];
      const bool flip = (d < 0) != halves[std::size_t(s)].negative;
      const std::size_t off = (std::size_t(d > 0 ? d : -d) / 2) * n;
      const auto& src = s == 0 ? table : endo_table;
      add_batch(
          n, [&](std::size_t i) -> AffinePoint& { return acc[i]; },
          [&](std::size_t i) { return flip ? negate(src[off + i]) : src[off + i]; }, scratch);
      started = true;
    }
  }
  return acc;
}

std::vector<AffinePoint> fold_points(std::span<const AffinePoint> lo, std::span<const AffinePoint> hi, const Scalar& k) {
  if (lo.size() != hi.size()) throw GroupError("fold_points: length mismatch");
  auto out = scale_points(hi, k);
  BatchScratch scratch;
  add_batch(
      out.size(), [&](std::size_t i) -> AffinePoint& { return out[i]; }, [&](std::size_t i) { return lo[i]; },
      scratch);
  return out;
}

std::vector<AffinePoint> add_points(std::span<const AffinePoint> a, std::span<const AffinePoint> b) {
  if (a.size() != b.size()) throw GroupError("add_points: length mismatch");
  std::vector<AffinePoint> out(a.begin(), a.end());
  BatchScratch scratch;
  add_batch(
      out.size(), [&](std::size_t i) -> AffinePoint& { return out[i]; }, [&](std::size_t i) { return b[i]; },
      scratch);
  return out;
}

MultiExp& MultiExp::add(const Scalar& k, const AffinePoint& p) {
  scalars_.push_back(k);
  points_.push_back(p);
  return *this;
}

MultiExp& MultiExp::add(const Scalar& k, const GroupElement& p) {
  loose_scalars_.push_back(k);
  loose_.push_back(p);
  return *this;
}

MultiExp& MultiExp::add(std::span<const Scalar> ks, std::span<const AffinePoint> ps) {
  if (ks.size() != ps.size()) throw GroupError("MultiExp::add: length mismatch");
  scalars_.insert(scalars_.end(), ks.begin(), ks.end());
  points_.insert(points_.end(), ps.begin(), ps.end());
  return *this;
}

MultiExp& MultiExp::add(const MultiExp& other, const Scalar& k) {
  for (std::size_t i = 0; i < other.scalars_.size(); ++i) add(k * other.scalars_[i], other.points_[i]);
  for (std::size_t i = 0; i < other.loose_.size(); ++i) add(k * other.loose_scalars_[i], other.loose_[i]);
  return *this;
}

GroupElement MultiExp::eval() const {
  std::vector<AffinePoint> pts = points_;
  std::vector<Scalar> ks = scalars_;
  const auto loose = batch_to_affine(loose_);
  pts.insert(pts.end(), loose.begin(), loose.end());
  ks.insert(ks.end(), loose_scalars_.begin(), loose_scalars_.end());
  return msm(pts, ks);
}

}  // namespace ra
