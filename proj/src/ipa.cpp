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

#include "ra/ipa.hpp"

#include "ra/mle.hpp"

namespace ra {
namespace {

// A base vector stored as scale * ratio^i * points[i]; folding keeps that
// shape, so each round needs one shared-scalar multiplication per side.
struct ScaledBases {
  std::vector<AffinePoint> points;
  Scalar scale = Scalar::one();
  ScalarVector ratio_powers;  // ratio^i for i < original length

  Scalar coeff(std::size_t i) const { return scale * ratio_powers[Eigen::Index(i)]; }
};

}  // namespace

void IpaProof::write(ByteWriter& w) const {
  w.u32(uint32_t(folds.size()));
  for (const auto& [l, r] : folds) {
    w.point(l);
    w.point(r);
  }
  w.scalar(a);
  w.scalar(b);
}

IpaProof IpaProof::read(ByteReader& r) {
  IpaProof p;
  const std::size_t k = r.count(2 * kPointBytes);
  if (k > 63) throw FormatError("ipa: fold count out of range");
  p.folds.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    GroupElement left = r.point();
    GroupElement right = r.point();
    p.folds.emplace_back(left, right);
  }
  p.a = r.scalar();
  p.b = r.scalar();
  return p;
}

IpaProof ipa_prove(const IpaBases& bases, ScalarVector a, ScalarVector b, const Scalar& c, Transcript& tr) {
  const std::size_t n = std::size_t(a.size());
  if (!is_pow2(n)) throw ProofError("ipa_prove: length " + std::to_string(n) + " is not a power of two");
  if (b.size() != a.size()) throw ProofError("ipa_prove: a and b differ in length");
  if (bases.g.size() < n || bases.h.size() < n) throw ProofError("ipa_prove: not enough bases");
  if (inner_product(a, b) != c) throw ProofError("ipa_prove: c != <a, b>");

  const Scalar x0 = tr.challenge_scalar("ipa/x0");
  const AffinePoint u = (x0 * GroupElement::from_affine(bases.u)).to_affine();

  ScaledBases g{{bases.g.begin(), bases.g.begin() + std::ptrdiff_t(n)}, Scalar::one(), powers(Scalar::one(), n)};
  ScaledBases h{{bases.h.begin(), bases.h.begin() + std::ptrdiff_t(n)}, Scalar::one(), powers(bases.h_ratio, n)};

  IpaProof proof;
  std::vector<Scalar> ks;
  std::vector<AffinePoint> ps;
  for (std::size_t len = n; len > 1; len /= 2) {
    const std::size_t half = len / 2;
    const Eigen::Index hh = Eigen::Index(half);
    const Scalar c_left = inner_product<Scalar>(a.head(hh), b.tail(hh));
    const Scalar c_right = inner_product<Scalar>(a.tail(hh), b.head(hh));

    auto cross = [&](const ScalarVector& av, std::size_t a_off, std::size_t g_off, const ScalarVector& bv,
                     std::size_t b_off, std::size_t h_off, const Scalar& cu) {
      ks.clear();
      ps.clear();
      for (std::size_t i = 0; i < half; ++i) {
        ks.push_back(av[Eigen::Index(a_off + i)] * g.coeff(g_off + i));
        ps.push_back(g.points[g_off + i]);
        ks.push_back(bv[Eigen::Index(b_off + i)] * h.coeff(h_off + i));
        ps.push_back(h.points[h_off + i]);
      }
      ks.push_back(cu);
      ps.push_back(u);
      return msm(ps, ks);
    };
    const GroupElement left = cross(a, 0, half, b, half, 0, c_left);
    const GroupElement right = cross(a, half, 0, b, 0, half, c_right);
    tr.absorb_point("ipa/L", left);
    tr.absorb_point("ipa/R", right);
    proof.folds.emplace_back(left, right);

    const Scalar x = tr.challenge_scalar("ipa/x");
    const Scalar x_inv = x.inverse();

    ScalarVector a2 = x * a.head(hh) + x_inv * a.tail(hh);
    ScalarVector b2 = x_inv * b.head(hh) + x * b.tail(hh);
    a = std::move(a2);
    b = std::move(b2);

    // g' = x^-1 g_lo + x g_hi = x^-1 s r^i (G_lo + x^2 r^half G_hi), and
    // symmetrically for h.
    const std::span<const AffinePoint> g_all(g.points), h_all(h.points);
    g.points = fold_points(g_all.first(half), g_all.subspan(half, half), x * x * g.ratio_powers[hh]);
    g.scale *= x_inv;
    h.points = fold_points(h_all.first(half), h_all.subspan(half, half), x_inv * x_inv * h.ratio_powers[hh]);
    h.scale *= x;
  }
  proof.a = a[0];
  proof.b = b[0];
  tr.absorb_scalar("ipa/a", proof.a);
  tr.absorb_scalar("ipa/b", proof.b);
  return proof;
}

bool ipa_verify(const IpaBases& bases, const IpaStatement& statement, const Scalar& c, std::size_t n,
                const IpaProof& proof, Transcript& tr) {
  if (!is_pow2(n) || bases.g.size() < n || bases.h.size() < n) return false;
  const std::size_t rounds = log2_exact(n);
  if (proof.folds.size() != rounds) return false;
  const auto sz = [](const ScalarVector& v) { return std::size_t(v.size()); };
  if ((sz(statement.g_coeffs) != 0 && sz(statement.g_coeffs) != n) ||
      (sz(statement.h_coeffs) != 0 && sz(statement.h_coeffs) != n)) {
    return false;
  }

  const Scalar x0 = tr.challenge_scalar("ipa/x0");
  std::vector<Scalar> xs(rounds);
  for (std::size_t j = 0; j < rounds; ++j) {
    tr.absorb_point("ipa/L", proof.folds[j].first);
    tr.absorb_point("ipa/R", proof.folds[j].second);
    xs[j] = tr.challenge_scalar("ipa/x");
  }
  tr.absorb_scalar("ipa/a", proof.a);
  tr.absorb_scalar("ipa/b", proof.b);

  std::vector<Scalar> x_inv = xs;
  batch_invert<Scalar>(x_inv);

  // Folded g = sum_i s_i g_i, where round j (first round = most significant
  // index bit) contributes x_j for the upper half and x_j^-1 for the lower.
  // Folded h uses s_i^-1.
  std::vector<Scalar> s(n);
  s[0] = Scalar::one();
  for (const Scalar& xi : x_inv) s[0] *= xi;
  std::vector<Scalar> x_sq(rounds);
  for (std::size_t j = 0; j < rounds; ++j) x_sq[j] = xs[j] * xs[j];
  for (std::size_t i = 1; i < n; ++i) {
    // Drop the lowest set bit; index bit k belongs to round rounds-1-k.
    const int k = __builtin_ctzll(i);
    s[i] = s[i & (i - 1)] * x_sq[rounds - 1 - std::size_t(k)];
  }
  std::vector<Scalar> s_inv = s;
  batch_invert<Scalar>(s_inv);

  // Check sum_i (a s_i - gc_i) g_i + sum_i r^i (b s_i^-1 - hc_i) h_i
  //   + x0 (ab - c) u - sum_j (x_j^2 L_j + x_j^-2 R_j) - extra == 0.
  std::vector<Scalar> ks;
  std::vector<AffinePoint> ps;
  ks.reserve(2 * n + 1);
  ps.reserve(2 * n + 1);
  Scalar ratio_pow = Scalar::one();
  for (std::size_t i = 0; i < n; ++i) {
    Scalar kg = proof.a * s[i];
    if (sz(statement.g_coeffs)) kg -= statement.g_coeffs[Eigen::Index(i)];
    Scalar kh = proof.b * s_inv[i];
    if (sz(statement.h_coeffs)) kh -= statement.h_coeffs[Eigen::Index(i)];
    ks.push_back(kg);
    ps.push_back(bases.g[i]);
    ks.push_back(kh * ratio_pow);
    ps.push_back(bases.h[i]);
    ratio_pow *= bases.h_ratio;
  }
  ks.push_back(x0 * (proof.a * proof.b - c));
  ps.push_back(bases.u);

  MultiExp check;
  check.add(ks, ps);
  for (std::size_t j = 0; j < rounds; ++j) {
    check.add(-x_sq[j], proof.folds[j].first);
    check.add(-(x_inv[j] * x_inv[j]), proof.folds[j].second);
  }
  check.add(statement.extra, -Scalar::one());
  return check.eval().is_identity();
}

}  // namespace ra
