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

#include <cstddef>
#include <variant>

#include "ra/field.hpp"
#include "ra/fixed_point.hpp"
#include "ra/group.hpp"
#include "ra/ipa.hpp"
#include "ra/polycommit.hpp"
#include "ra/rangeproof.hpp"
#include "ra/sumcheck.hpp"
#include "ra/transcript.hpp"
#include "ra/verdict.hpp"
#include "ra/wire.hpp"

namespace ra {

// Layer protocols. Matrices are committed as <matrix_to_mle(M), g>; every
// dimension must be a power of two (callers zero-pad).

/// A fixed-point value outside the range the protocol can carry.
class OverflowError : public ProofError {
 public:
  using ProofError::ProofError;
};

/// A is n x m, B is m x k.
struct MatmulDims {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;

  friend bool operator==(const MatmulDims&, const MatmulDims&) = default;
};

/// Proof that C = A B and C' = round(C), with C' committed as p_cp.
struct MatmulRoundProof {
  GroupElement p_a;
  GroupElement p_b;
  GroupElement p_c;
  GroupElement p_cp;
  SumcheckProof sumcheck;  // sum_l a~(r1, l) b~(l, r2)
  OpeningProof open_c;     // c~(r1, r2)
  RangeProof range_e;      // C - 2^s C' + 2^{s-1} in [0, 2^s)
  RangeProof range_cp;     // C' + 2^{t+1} in [0, 2^{t+2})

  std::size_t byte_size() const;
  void write(ByteWriter& w) const;
  static MatmulRoundProof read(ByteReader& r);
};

struct MatmulRoundResult {
  ScalarMatrix cp;
  MatmulRoundProof proof;
};

/// True when 2(t+s) + log2(m) + 2 < log2(p), so that an inner product of m
/// terms with entries below 2^{t+s} in magnitude cannot wrap.
bool fits_modulus(const FixedPointParams& params, std::size_t m);

/// Generators one matmul instance needs.
std::size_t matmul_tau(const MatmulDims& dims, const FixedPointParams& params);

/// Throws DimensionError on bad shapes and OverflowError when an input entry
/// reaches 2^{t+s} or a rounded output reaches 2^{t+1} in magnitude.
MatmulRoundResult prove_matmul_round(const GeneratorSet& gens, const ScalarMatrix& a, const ScalarMatrix& b,
                                     const FixedPointParams& params, Transcript& tr);

Verdict verify_matmul_round(const GeneratorSet& gens, const GroupElement& p_a, const GroupElement& p_b,
                            const MatmulDims& dims, const FixedPointParams& params, const MatmulRoundProof& proof,
                            Transcript& tr);

/// Proof that p_b commits to (A + |A|) / 2 for the committed A.
struct ReluProof {
  GroupElement p_y;
  GroupElement p_b;
  RangeProof range_y;        // |A| in [0, 2^bits)
  SumcheckProof sumcheck_eq; // sum_x eq(s, x) (a~(x)^2 - y~(x)^2) = 0

  std::size_t byte_size() const;
  void write(ByteWriter& w) const;
  static ReluProof read(ByteReader& r);
};

/// `entries` = nk; `bits` bounds |a| and is t + 2 after a rounding layer.
struct ReluShape {
  std::size_t entries = 0;
  std::size_t bits = 0;
};

/// Bit width of Y after a rounding layer.
inline std::size_t relu_bits(const FixedPointParams& params) { return std::size_t(params.t) + 2; }

/// Generators one ReLU instance needs.
std::size_t relu_tau(const ReluShape& shape);

struct ReluResult {
  ScalarMatrix b;
  ReluProof proof;
};

/// Throws OverflowError when some |a| reaches 2^bits.
ReluResult prove_relu(const GeneratorSet& gens, const ScalarMatrix& a, const GroupElement& p_a, std::size_t bits,
                      Transcript& tr);

Verdict verify_relu(const GeneratorSet& gens, const GroupElement& p_a, const ReluShape& shape, const ReluProof& proof,
                    Transcript& tr);

using LayerProof = std::variant<MatmulRoundProof, ReluProof>;

/// Tag byte (1 matmul_round, 2 relu) followed by the proof.
void write_layer_proof(ByteWriter& w, const LayerProof& proof);
LayerProof read_layer_proof(ByteReader& r);
std::size_t layer_proof_bytes(const LayerProof& proof);

namespace detail {

/// How a cheating prover fills bit vectors for values outside the range.
enum class BitStrategy {
  kWrapped,  // low bits of the canonical integer
  kNonBit,   // the whole value in the lowest digit, so the weighted sum is exact
};

/// Matmul proof state after the product sum-check and the opening of C, before
/// C' is committed.
struct MatmulPrefix {
  MatmulDims dims;
  ScalarMatrix c;
  MatmulRoundProof proof;
};

MatmulPrefix matmul_prefix(const GeneratorSet& gens, const ScalarMatrix& a, const ScalarMatrix& b,
                           const FixedPointParams& params, Transcript& tr);

/// Commits to `cp` (honest or not) and proves both ranges; values outside a
/// range are filled in with `strategy`.
MatmulRoundProof matmul_finish(const GeneratorSet& gens, const MatmulPrefix& prefix, const ScalarMatrix& cp,
                               const FixedPointParams& params, BitStrategy strategy, Transcript& tr);

/// matmul_finish up to and including range_e; range_cp is left empty.
MatmulRoundProof matmul_finish_residual(const GeneratorSet& gens, const MatmulPrefix& prefix, const ScalarMatrix& cp,
                                        const FixedPointParams& params, BitStrategy strategy, Transcript& tr);

/// Range proof that accepts out-of-range values, filling their bits with `strategy`.
RangeProof rp_prove_any(const GeneratorSet& gens, std::span<const Scalar> values, std::size_t bits,
                        BitStrategy strategy, Transcript& tr);

/// ReLU prover with a caller-chosen Y and B; B defaults to (A + Y) / 2.
ReluProof relu_with(const GeneratorSet& gens, const ScalarMatrix& a, const GroupElement& p_a, const ScalarVector& y,
                    const ScalarVector* b, std::size_t bits, BitStrategy strategy, Transcript& tr);

}  // namespace detail
}  // namespace ra
