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


#include "ra/layerproto.hpp"

#include <string>
#include <utility>

#include "ra/mle.hpp"

namespace ra {
namespace {

std::span<const Scalar> as_span(const ScalarVector& v) { return {v.data(), std::size_t(v.size())}; }

ScalarVector concat(const ScalarVector& x, const ScalarVector& y) {
  ScalarVector out(x.size() + y.size());
  out << x, y;
  return out;
}

Scalar pow2(std::size_t e) { return Scalar(2).pow(e); }

void bind_dims(Transcript& tr, const MatmulDims& d, const FixedPointParams& params) {
  tr.bind_u64("mm/n", d.n);
  tr.bind_u64("mm/m", d.m);
  tr.bind_u64("mm/k", d.k);
  tr.bind_u64("mm/s", uint64_t(params.s));
  tr.bind_u64("mm/t", uint64_t(params.t));
}

std::string dims_string(const MatmulDims& d) {
  return std::to_string(d.n) + "x" + std::to_string(d.m) + "x" + std::to_string(d.k);
}

bool dims_valid(const MatmulDims& d) { return is_pow2(d.n) && is_pow2(d.m) && is_pow2(d.k); }

/// |x| < 2^bits as a signed integer.
bool magnitude_below(const Scalar& x, int bits) {
  const auto v = x.symmetric_i64();
  if (!v) return false;
  const int64_t mag = *v < 0 ? -*v : *v;
  return bits >= 63 || mag < (int64_t(1) << bits);
}

/// sum of g[0..n) scaled by k, as a lazy term.
void add_shift(MultiExp& acc, const GeneratorSet& gens, std::size_t n, const Scalar& k) {
  const std::vector<Scalar> ks(n, k);
  acc.add(ks, gens.g_slice(n));
}

ScalarVector shifted(const ScalarVector& v, const Scalar& k) {
  return v + ScalarVector::Constant(v.size(), k);
}

}  // namespace

std::size_t matmul_tau(const MatmulDims& d, const FixedPointParams& params) {
  const std::size_t nk = d.n * d.k;
  return std::max({d.n * d.m, d.m * d.k, nk, RangeShape{nk, std::size_t(params.s)}.length(),
                   RangeShape{nk, std::size_t(params.t) + 2}.length()});
}

std::size_t relu_tau(const ReluShape& shape) {
  return std::max(shape.entries, RangeShape{shape.entries, shape.bits}.length());
}

bool fits_modulus(const FixedPointParams& params, std::size_t m) {
  if (!is_pow2(m)) return false;
  return 2 * (params.t + params.s) + int(log2_exact(m)) + 2 < Scalar::kBits;
}

// Matmul + rounding.

std::size_t MatmulRoundProof::byte_size() const {
  return 4 * kPointBytes + sumcheck.byte_size() + open_c.byte_size() + range_e.byte_size() + range_cp.byte_size();
}

void MatmulRoundProof::write(ByteWriter& w) const {
  w.point(p_a);
  w.point(p_b);
  w.point(p_c);
  w.point(p_cp);
  sumcheck.write(w);
  open_c.write(w);
  range_e.write(w);
  range_cp.write(w);
}

MatmulRoundProof MatmulRoundProof::read(ByteReader& r) {
  MatmulRoundProof p;
  p.p_a = r.point();
  p.p_b = r.point();
  p.p_c = r.point();
  p.p_cp = r.point();
  p.sumcheck = SumcheckProof::read(r);
  p.open_c = OpeningProof::read(r);
  p.range_e = RangeProof::read(r);
  p.range_cp = RangeProof::read(r);
  return p;
}

namespace detail {

RangeProof rp_prove_any(const GeneratorSet& gens, std::span<const Scalar> values, std::size_t bits,
                        BitStrategy strategy, Transcript& tr) {
  const RangeShape shape{values.size(), bits};
  ScalarVector a_left = ScalarVector::Constant(Eigen::Index(shape.length()), Scalar());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const Limbs v = values[j].to_limbs();
    const bool in_range = detail::bit_length(v) <= int(bits);
    if (!in_range && strategy == BitStrategy::kNonBit) {
      a_left[Eigen::Index(j * bits)] = values[j];
      continue;
    }
    for (std::size_t k = 0; k < bits; ++k) {
      if ((v[k / 64] >> (k % 64)) & 1) a_left[Eigen::Index(j * bits + k)] = Scalar::one();
    }
  }
  const ScalarVector a_right = shifted(a_left, -Scalar::one());
  return rp_prove_unchecked(gens, values, bits, a_left, a_right, tr);
}

MatmulPrefix matmul_prefix(const GeneratorSet& gens, const ScalarMatrix& a, const ScalarMatrix& b,
                           const FixedPointParams& params, Transcript& tr) {
  params.validate<Scalar>();
  const MatmulDims dims{std::size_t(a.rows()), std::size_t(a.cols()), std::size_t(b.cols())};
  if (std::size_t(b.rows()) != dims.m) throw DimensionError("matmul: inner dimensions differ");
  if (!dims_valid(dims)) throw DimensionError("matmul: dims " + dims_string(dims) + " are not powers of two");
  if (!fits_modulus(params, dims.m)) throw DimensionError("matmul: modulus too small for m = " + std::to_string(dims.m));
  if (gens.tau() < matmul_tau(dims, params)) throw DimensionError("matmul: generator set too small");
  for (const Scalar& x : a.reshaped()) {
    if (!magnitude_below(x, params.t + params.s)) throw OverflowError("matmul: entry of A exceeds 2^(t+s)");
  }
  for (const Scalar& x : b.reshaped()) {
    if (!magnitude_below(x, params.t + params.s)) throw OverflowError("matmul: entry of B exceeds 2^(t+s)");
  }

  MatmulPrefix pre;
  pre.dims = dims;
  pre.c = a * b;
  const ScalarVector a_tbl = matrix_to_mle(a);
  const ScalarVector b_tbl = matrix_to_mle(b);
  const ScalarVector c_tbl = matrix_to_mle(pre.c);
  MatmulRoundProof& proof = pre.proof;
  proof.p_a = commit(gens.g, a_tbl);
  proof.p_b = commit(gens.g, b_tbl);
  proof.p_c = commit(gens.g, c_tbl);

  bind_dims(tr, dims, params);
  tr.absorb_point("mm/P_A", proof.p_a);
  tr.absorb_point("mm/P_B", proof.p_b);
  tr.absorb_point("mm/P_C", proof.p_c);
  const ScalarVector r1 = tr.challenge_vector("mm/r1", log2_exact(dims.n));
  const ScalarVector r2 = tr.challenge_vector("mm/r2", log2_exact(dims.k));

  proof.sumcheck = sc_prove_product(gens, a_tbl, as_span(r1), b_tbl, as_span(r2), tr);
  const ScalarVector rc = concat(r1, r2);
  proof.open_c = pc_open(gens, c_tbl, as_span(rc), tr);
  return pre;
}

MatmulRoundProof matmul_finish_residual(const GeneratorSet& gens, const MatmulPrefix& prefix, const ScalarMatrix& cp,
                                        const FixedPointParams& params, BitStrategy strategy, Transcript& tr) {
  if (cp.rows() != prefix.c.rows() || cp.cols() != prefix.c.cols()) throw DimensionError("matmul: C' has the wrong shape");
  MatmulRoundProof proof = prefix.proof;
  const ScalarVector c_tbl = matrix_to_mle(prefix.c);
  const ScalarVector cp_tbl = matrix_to_mle(cp);
  proof.p_cp = commit(gens.g, cp_tbl);
  tr.absorb_point("mm/P_Cp", proof.p_cp);

  const std::size_t s = std::size_t(params.s);
  const ScalarVector e = shifted(c_tbl - pow2(s) * cp_tbl, pow2(s - 1));
  proof.range_e = rp_prove_any(gens, as_span(e), s, strategy, tr);
  return proof;
}

MatmulRoundProof matmul_finish(const GeneratorSet& gens, const MatmulPrefix& prefix, const ScalarMatrix& cp,
                               const FixedPointParams& params, BitStrategy strategy, Transcript& tr) {
  MatmulRoundProof proof = matmul_finish_residual(gens, prefix, cp, params, strategy, tr);
  const ScalarVector cps = shifted(matrix_to_mle(cp), pow2(std::size_t(params.t) + 1));
  proof.range_cp = rp_prove_any(gens, as_span(cps), std::size_t(params.t) + 2, strategy, tr);
  return proof;
}

}  // namespace detail

MatmulRoundResult prove_matmul_round(const GeneratorSet& gens, const ScalarMatrix& a, const ScalarMatrix& b,
                                     const FixedPointParams& params, Transcript& tr) {
  detail::MatmulPrefix prefix = detail::matmul_prefix(gens, a, b, params, tr);
  MatmulRoundResult out;
  out.cp = prefix.c.unaryExpr([&](const Scalar& x) { return round_fixed(x, params); });
  for (const Scalar& x : out.cp.reshaped()) {
    if (!magnitude_below(x, params.t + 1)) throw OverflowError("matmul: rounded output exceeds 2^(t+1)");
  }
  // In range by construction, so no bit vector takes the cheating path.
  out.proof = detail::matmul_finish(gens, prefix, out.cp, params, detail::BitStrategy::kWrapped, tr);
  return out;
}

Verdict verify_matmul_round(const GeneratorSet& gens, const GroupElement& p_a, const GroupElement& p_b,
                            const MatmulDims& dims, const FixedPointParams& params, const MatmulRoundProof& proof,
                            Transcript& tr) {
  if (!dims_valid(dims)) return Verdict::reject("dims " + dims_string(dims) + " are not powers of two");
  if (params.s < 1 || params.t < 0 || !fits_modulus(params, dims.m)) return Verdict::reject("unsupported parameters");
  if (gens.tau() < matmul_tau(dims, params)) return Verdict::reject("generator set too small");
  if (proof.p_a != p_a) return Verdict::reject("P_A does not match the expected commitment");
  if (proof.p_b != p_b) return Verdict::reject("P_B does not match the expected commitment");

  bind_dims(tr, dims, params);
  tr.absorb_point("mm/P_A", proof.p_a);
  tr.absorb_point("mm/P_B", proof.p_b);
  tr.absorb_point("mm/P_C", proof.p_c);
  const ScalarVector r1 = tr.challenge_vector("mm/r1", log2_exact(dims.n));
  const ScalarVector r2 = tr.challenge_vector("mm/r2", log2_exact(dims.k));

  if (Verdict v = sc_verify_product(gens, p_a, as_span(r1), p_b, as_span(r2), log2_exact(dims.m), proof.sumcheck, tr);
      !v) {
    return v.within("product sum-check");
  }
  const ScalarVector rc = concat(r1, r2);
  if (Verdict v = pc_verify(gens, proof.p_c, as_span(rc), proof.open_c, tr); !v) return v.within("opening of C");
  if (proof.open_c.value != proof.sumcheck.sum) return Verdict::reject("c~(r1, r2) differs from the sum-check value");

  tr.absorb_point("mm/P_Cp", proof.p_cp);
  const std::size_t nk = dims.n * dims.k;
  const std::size_t s = std::size_t(params.s);
  const std::size_t t = std::size_t(params.t);

  MultiExp e_commit(proof.p_c);
  e_commit.add(-pow2(s), proof.p_cp);
  add_shift(e_commit, gens, nk, pow2(s - 1));
  if (Verdict v = rp_verify(gens, e_commit, RangeShape{nk, s}, proof.range_e, tr); !v) {
    return v.within("range of the rounding residual");
  }

  MultiExp cp_commit(proof.p_cp);
  add_shift(cp_commit, gens, nk, pow2(t + 1));
  if (Verdict v = rp_verify(gens, cp_commit, RangeShape{nk, t + 2}, proof.range_cp, tr); !v) {
    return v.within("range of the rounded output");
  }
  return Verdict::accept();
}

// ReLU.

std::size_t ReluProof::byte_size() const {
  return 2 * kPointBytes + range_y.byte_size() + sumcheck_eq.byte_size();
}

void ReluProof::write(ByteWriter& w) const {
  w.point(p_y);
  w.point(p_b);
  range_y.write(w);
  sumcheck_eq.write(w);
}

ReluProof ReluProof::read(ByteReader& r) {
  ReluProof p;
  p.p_y = r.point();
  p.p_b = r.point();
  p.range_y = RangeProof::read(r);
  p.sumcheck_eq = SumcheckProof::read(r);
  return p;
}

namespace {

void bind_relu(Transcript& tr, const GroupElement& p_a, const ReluShape& shape) {
  tr.bind_u64("relu/nk", shape.entries);
  tr.bind_u64("relu/bits", shape.bits);
  tr.bind_point("relu/P_A", p_a);
}

bool relu_shape_valid(const ReluShape& shape) {
  return is_pow2(shape.entries) && shape.bits >= 1 && 2 * shape.bits + 2 < std::size_t(Scalar::kBits);
}

}  // namespace

namespace detail {

ReluProof relu_with(const GeneratorSet& gens, const ScalarMatrix& a, const GroupElement& p_a, const ScalarVector& y,
                    const ScalarVector* b, std::size_t bits, BitStrategy strategy, Transcript& tr) {
  const ScalarVector a_tbl = matrix_to_mle(a);
  const ReluShape shape{std::size_t(a_tbl.size()), bits};
  if (!relu_shape_valid(shape)) throw DimensionError("relu: bad shape");
  if (y.size() != a_tbl.size()) throw DimensionError("relu: Y has the wrong length");
  if (gens.tau() < relu_tau(shape)) {
    throw DimensionError("relu: generator set too small");
  }

  ReluProof proof;
  bind_relu(tr, p_a, shape);
  proof.p_y = commit(gens.g, y);
  tr.absorb_point("relu/P_Y", proof.p_y);
  proof.range_y = rp_prove_any(gens, as_span(y), bits, strategy, tr);

  const ScalarVector half_sum = (a_tbl + y) * Scalar(2).inverse();
  proof.p_b = commit(gens.g, b ? *b : half_sum);
  tr.absorb_point("relu/P_B", proof.p_b);
  const ScalarVector s = tr.challenge_vector("relu/s", log2_exact(shape.entries));
  proof.sumcheck_eq = sc_prove_equality(gens, a_tbl, y, as_span(s), tr);
  return proof;
}

}  // namespace detail

ReluResult prove_relu(const GeneratorSet& gens, const ScalarMatrix& a, const GroupElement& p_a, std::size_t bits,
                      Transcript& tr) {
  ScalarVector y(a.size());
  Eigen::Index i = 0;
  for (const Scalar& x : a.reshaped<Eigen::RowMajor>()) {
    if (!magnitude_below(x, int(bits))) throw OverflowError("relu: |a| exceeds 2^" + std::to_string(bits));
    const int64_t v = *x.symmetric_i64();
    y[i++] = Scalar(v < 0 ? -v : v);
  }
  ReluResult out;
  out.b = a.unaryExpr([](const Scalar& x) { return *x.symmetric_i64() > 0 ? x : Scalar(); });
  out.proof = detail::relu_with(gens, a, p_a, y, nullptr, bits, detail::BitStrategy::kWrapped, tr);
  return out;
}

Verdict verify_relu(const GeneratorSet& gens, const GroupElement& p_a, const ReluShape& shape, const ReluProof& proof,
                    Transcript& tr) {
  if (!relu_shape_valid(shape)) return Verdict::reject("bad shape");
  if (gens.tau() < relu_tau(shape)) {
    return Verdict::reject("generator set too small");
  }
  bind_relu(tr, p_a, shape);
  tr.absorb_point("relu/P_Y", proof.p_y);
  if (Verdict v = rp_verify(gens, proof.p_y, RangeShape{shape.entries, shape.bits}, proof.range_y, tr); !v) {
    return v.within("range of |A|");
  }
  tr.absorb_point("relu/P_B", proof.p_b);
  const ScalarVector s = tr.challenge_vector("relu/s", log2_exact(shape.entries));
  if (Verdict v = sc_verify_equality(gens, p_a, proof.p_y, as_span(s), proof.sumcheck_eq, tr); !v) {
    return v.within("equality sum-check");
  }
  if (proof.p_b + proof.p_b != p_a + proof.p_y) return Verdict::reject("2 P_B != P_A + P_Y");
  return Verdict::accept();
}

// Tagged union.

namespace {
constexpr uint8_t kMatmulTag = 1;
constexpr uint8_t kReluTag = 2;
}  // namespace

void write_layer_proof(ByteWriter& w, const LayerProof& proof) {
  if (const auto* mm = std::get_if<MatmulRoundProof>(&proof)) {
    w.u8(kMatmulTag);
    mm->write(w);
  } else {
    w.u8(kReluTag);
    std::get<ReluProof>(proof).write(w);
  }
}

LayerProof read_layer_proof(ByteReader& r) {
  switch (r.u8()) {
    case kMatmulTag:
      return MatmulRoundProof::read(r);
    case kReluTag:
      return ReluProof::read(r);
    default:
      throw FormatError("unknown layer proof tag");
  }
}

std::size_t layer_proof_bytes(const LayerProof& proof) {
  return std::visit([](const auto& p) { return p.byte_size(); }, proof);
}

}  // namespace ra
