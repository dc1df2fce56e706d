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

#include "ra/sumcheck.hpp"

#include <string>
#include <utility>

#include "ra/mle.hpp"

namespace ra {
namespace {

constexpr std::size_t kMaxDegree = 8;

std::span<const Scalar> as_span(const ScalarVector& v) { return {v.data(), std::size_t(v.size())}; }

ScalarVector concat(std::span<const Scalar> x, std::span<const Scalar> y) {
  ScalarVector out(Eigen::Index(x.size() + y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out[Eigen::Index(i)] = x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[Eigen::Index(x.size() + i)] = y[i];
  return out;
}

}  // namespace

Scalar RoundMessage::eval(const Scalar& x) const {
  Scalar acc;
  for (Eigen::Index i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

ScalarVector interpolate_monomial(std::span<const Scalar> evals) {
  const std::size_t n = evals.size();
  // Newton form on nodes 0..n-1: divided differences, then expansion.
  std::vector<Scalar> dd(evals.begin(), evals.end());
  for (std::size_t level = 1; level < n; ++level) {
    const Scalar inv = Scalar(int64_t(level)).inverse();
    for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) * inv;
  }
  ScalarVector coeffs = ScalarVector::Constant(Eigen::Index(n), Scalar());
  // Horner over the Newton basis: p = dd[0] + (X - 0)(dd[1] + (X - 1)(...)).
  for (std::size_t k = n; k-- > 0;) {
    // coeffs <- coeffs * (X - k) + dd[k]
    const Scalar node{int64_t(k)};
    for (Eigen::Index j = Eigen::Index(n) - 1; j > 0; --j) coeffs[j] = coeffs[j - 1] - node * coeffs[j];
    coeffs[0] = dd[k] - node * coeffs[0];
  }
  return coeffs;
}

std::size_t SumcheckProof::byte_size() const {
  std::size_t bytes = kScalarBytes + first.byte_size() + second.byte_size();
  for (const auto& r : rounds) bytes += std::size_t(r.coeffs.size()) * kScalarBytes;
  return bytes;
}

void SumcheckProof::write(ByteWriter& w) const {
  w.scalar(sum);
  w.u32(uint32_t(rounds.size()));
  for (const auto& r : rounds) {
    w.u8(uint8_t(r.coeffs.size()));
    for (const Scalar& c : r.coeffs) w.scalar(c);
  }
  first.write(w);
  second.write(w);
}

SumcheckProof SumcheckProof::read(ByteReader& r) {
  SumcheckProof p;
  p.sum = r.scalar();
  const std::size_t count = r.count(1);
  if (count > 64) throw FormatError("sumcheck: round count out of range");
  p.rounds.resize(count);
  for (auto& round : p.rounds) {
    const std::size_t k = r.u8();
    if (k == 0 || k > kMaxDegree + 1) throw FormatError("sumcheck: bad coefficient count");
    round.coeffs.resize(Eigen::Index(k));
    for (Scalar& c : round.coeffs) c = r.scalar();
  }
  p.first = OpeningProof::read(r);
  p.second = OpeningProof::read(r);
  return p;
}

SumcheckRun sc_prove(std::vector<ScalarVector> tables, std::size_t degree, const Combiner& combine, Transcript& tr) {
  if (tables.empty()) throw DimensionError("sc_prove: no tables");
  if (degree == 0 || degree > kMaxDegree) throw DimensionError("sc_prove: unsupported degree");
  const Eigen::Index size = tables.front().size();
  for (const auto& t : tables) {
    if (t.size() != size) throw DimensionError("sc_prove: tables differ in size");
  }
  const std::size_t v = log2_exact(std::size_t(size));

  SumcheckRun run;
  std::vector<Scalar> at(tables.size());
  for (Eigen::Index j = 0; j < size; ++j) {
    for (std::size_t t = 0; t < tables.size(); ++t) at[t] = tables[t][j];
    run.sum += combine(at);
  }
  tr.absorb_scalar("sc/sum", run.sum);

  std::vector<Scalar> evals(degree + 1);
  std::vector<Scalar> lo(tables.size()), step(tables.size());
  run.point.resize(Eigen::Index(v));
  for (std::size_t round = 0; round < v; ++round) {
    const Eigen::Index half = tables.front().size() / 2;
    std::fill(evals.begin(), evals.end(), Scalar());
    for (Eigen::Index j = 0; j < half; ++j) {
      for (std::size_t t = 0; t < tables.size(); ++t) {
        lo[t] = tables[t][j];
        step[t] = tables[t][j + half] - lo[t];
        at[t] = lo[t];
      }
      evals[0] += combine(at);
      for (std::size_t x = 1; x <= degree; ++x) {
        for (std::size_t t = 0; t < tables.size(); ++t) at[t] += step[t];
        evals[x] += combine(at);
      }
    }
    RoundMessage msg{interpolate_monomial(evals)};
    std::vector<uint8_t> bytes;
    for (const Scalar& c : msg.coeffs) {
      const auto b = c.to_bytes();
      bytes.insert(bytes.end(), b.begin(), b.end());
    }
    tr.absorb("sc/round", bytes, Sender::kProver);
    const Scalar r = tr.challenge_scalar("sc/r");
    run.point[Eigen::Index(round)] = r;
    for (auto& t : tables) fold_first_variable(t, r);
    run.rounds.push_back(std::move(msg));
  }
  return run;
}

Verdict sc_verify(const Scalar& sum, std::span<const RoundMessage> rounds, std::size_t variables, std::size_t degree,
                  const FinalCheck& final_check, Transcript& tr) {
  if (rounds.size() != variables) {
    return Verdict::reject("expected " + std::to_string(variables) + " rounds, got " + std::to_string(rounds.size()));
  }
  tr.absorb_scalar("sc/sum", sum);
  Scalar claim = sum;
  ScalarVector point{Eigen::Index(variables)};
  for (std::size_t i = 0; i < variables; ++i) {
    const RoundMessage& msg = rounds[i];
    if (std::size_t(msg.coeffs.size()) != degree + 1) {
      return Verdict::reject("round " + std::to_string(i + 1) + " has the wrong degree");
    }
    // f_i(0) + f_i(1) = 2 c_0 + c_1 + ... + c_d.
    Scalar both = msg.coeffs[0];
    for (const Scalar& c : msg.coeffs) both += c;
    if (both != claim) return Verdict::reject("round " + std::to_string(i + 1) + " sum mismatch");
    std::vector<uint8_t> bytes;
    for (const Scalar& c : msg.coeffs) {
      const auto b = c.to_bytes();
      bytes.insert(bytes.end(), b.begin(), b.end());
    }
    tr.absorb("sc/round", bytes, Sender::kProver);
    const Scalar r = tr.challenge_scalar("sc/r");
    point[Eigen::Index(i)] = r;
    claim = msg.eval(r);
  }
  return final_check(as_span(point), claim).within("final check");
}

SumcheckProof sc_prove_product(const GeneratorSet& gens, const ScalarVector& a, std::span<const Scalar> y1,
                               const ScalarVector& b, std::span<const Scalar> y2, Transcript& tr) {
  ScalarVector a_tbl = bind_prefix(a, y1);
  ScalarVector b_tbl = bind_suffix(b, y2);
  if (a_tbl.size() != b_tbl.size()) throw DimensionError("sc_prove_product: inner dimensions differ");
  const Combiner product = [](std::span<const Scalar> t) { return t[0] * t[1]; };
  SumcheckRun run = sc_prove({std::move(a_tbl), std::move(b_tbl)}, 2, product, tr);

  SumcheckProof proof;
  proof.sum = run.sum;
  proof.rounds = std::move(run.rounds);
  const std::span<const Scalar> r = as_span(run.point);
  const ScalarVector za = concat(y1, r);
  const ScalarVector zb = concat(r, y2);
  proof.first = pc_open(gens, a, as_span(za), tr);
  proof.second = pc_open(gens, b, as_span(zb), tr);
  return proof;
}

Verdict sc_verify_product(const GeneratorSet& gens, const MultiExp& commit_a, std::span<const Scalar> y1,
                          const MultiExp& commit_b, std::span<const Scalar> y2, std::size_t variables,
                          const SumcheckProof& proof, Transcript& tr) {
  const FinalCheck check = [&](std::span<const Scalar> r, const Scalar& claim) {
    const ScalarVector za = concat(y1, r);
    if (Verdict v = pc_verify(gens, commit_a, as_span(za), proof.first, tr); !v) return v.within("opening of a");
    const ScalarVector zb = concat(r, y2);
    if (Verdict v = pc_verify(gens, commit_b, as_span(zb), proof.second, tr); !v) return v.within("opening of b");
    if (proof.first.value * proof.second.value != claim) return Verdict::reject("product of openings mismatch");
    return Verdict::accept();
  };
  return sc_verify(proof.sum, proof.rounds, variables, 2, check, tr);
}

SumcheckProof sc_prove_equality(const GeneratorSet& gens, const ScalarVector& a, const ScalarVector& y,
                                std::span<const Scalar> s, Transcript& tr) {
  if (a.size() != y.size() || a.size() != (Eigen::Index(1) << s.size())) {
    throw DimensionError("sc_prove_equality: table sizes do not match the point");
  }
  const Combiner summand = [](std::span<const Scalar> t) { return t[0] * (t[1] * t[1] - t[2] * t[2]); };
  SumcheckRun run = sc_prove({chi_vector<Scalar>(s), a, y}, 3, summand, tr);

  SumcheckProof proof;
  proof.sum = run.sum;
  proof.rounds = std::move(run.rounds);
  proof.first = pc_open(gens, a, as_span(run.point), tr);
  proof.second = pc_open(gens, y, as_span(run.point), tr);
  return proof;
}

Verdict sc_verify_equality(const GeneratorSet& gens, const MultiExp& commit_a, const MultiExp& commit_y,
                           std::span<const Scalar> s, const SumcheckProof& proof, Transcript& tr) {
  if (!proof.sum.is_zero()) return Verdict::reject("claimed sum is not zero");
  const FinalCheck check = [&](std::span<const Scalar> r, const Scalar& claim) {
    if (Verdict v = pc_verify(gens, commit_a, r, proof.first, tr); !v) return v.within("opening of a");
    if (Verdict v = pc_verify(gens, commit_y, r, proof.second, tr); !v) return v.within("opening of y");
    const Scalar a = proof.first.value;
    const Scalar y = proof.second.value;
    if (eq_eval(s, r) * (a * a - y * y) != claim) return Verdict::reject("equality summand mismatch");
    return Verdict::accept();
  };
  return sc_verify(proof.sum, proof.rounds, s.size(), 3, check, tr);
}

}  // namespace ra
