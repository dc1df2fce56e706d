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
#include <functional>
#include <span>
#include <vector>

#include "ra/field.hpp"
#include "ra/group.hpp"
#include "ra/polycommit.hpp"
#include "ra/transcript.hpp"
#include "ra/verdict.hpp"
#include "ra/wire.hpp"

namespace ra {

/// One prover message: f_i(X) in monomial form, coeffs[k] multiplies X^k.
struct RoundMessage {
  ScalarVector coeffs;

  Scalar eval(const Scalar& x) const;
};

/// Monomial coefficients of the polynomial of degree < |evals| taking value
/// evals[x] at x = 0, 1, ..., |evals| - 1.
ScalarVector interpolate_monomial(std::span<const Scalar> evals);

/// Sum-check transcript plus the two commitment openings of the final check.
struct SumcheckProof {
  Scalar sum;
  std::vector<RoundMessage> rounds;
  OpeningProof first;
  OpeningProof second;

  std::size_t byte_size() const;
  void write(ByteWriter& w) const;
  static SumcheckProof read(ByteReader& r);
};

// Generic engine over products of multilinear tables. The summand at a
// hypercube point is combine(t_0(x), ..., t_{k-1}(x)); `degree` bounds its
// degree in each variable.

using Combiner = std::function<Scalar(std::span<const Scalar>)>;

struct SumcheckRun {
  Scalar sum;
  std::vector<RoundMessage> rounds;
  ScalarVector point;  // r_1, ..., r_v
};

SumcheckRun sc_prove(std::vector<ScalarVector> tables, std::size_t degree, const Combiner& combine, Transcript& tr);

/// Called with the challenge point and the claimed f(r) = f_v(r_v).
using FinalCheck = std::function<Verdict(std::span<const Scalar> point, const Scalar& claim)>;

/// Checks f_1(0) + f_1(1) = w, f_{i-1}(r_{i-1}) = f_i(0) + f_i(1) and the
/// final check, drawing the same challenges as the prover.
Verdict sc_verify(const Scalar& sum, std::span<const RoundMessage> rounds, std::size_t variables, std::size_t degree,
                  const FinalCheck& final_check, Transcript& tr);

// Product form: sum_l a~(y1, l) b~(l, y2) with degree 2. `a` and `b` are the
// full tables behind the commitments; the openings are a~ at (y1, r) and b~
// at (r, y2).

SumcheckProof sc_prove_product(const GeneratorSet& gens, const ScalarVector& a, std::span<const Scalar> y1,
                               const ScalarVector& b, std::span<const Scalar> y2, Transcript& tr);

Verdict sc_verify_product(const GeneratorSet& gens, const MultiExp& commit_a, std::span<const Scalar> y1,
                          const MultiExp& commit_b, std::span<const Scalar> y2, std::size_t variables,
                          const SumcheckProof& proof, Transcript& tr);

// Equality form: 0 = sum_x eq(s, x) (a~(x)^2 - y~(x)^2) with degree 3; the
// openings are a~(r) and y~(r).

SumcheckProof sc_prove_equality(const GeneratorSet& gens, const ScalarVector& a, const ScalarVector& y,
                                std::span<const Scalar> s, Transcript& tr);

Verdict sc_verify_equality(const GeneratorSet& gens, const MultiExp& commit_a, const MultiExp& commit_y,
                           std::span<const Scalar> s, const SumcheckProof& proof, Transcript& tr);

}  // namespace ra
