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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Timing CSVs go to --csv-dir.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ra/bench.hpp"
#include "ra/layerproto.hpp"
#include "ra/mle.hpp"
#include "ra/pipeline.hpp"

namespace {

using namespace ra;

// Pinned tolerances and sizes.
constexpr double kCriterion1BudgetMs = 1000;
constexpr std::size_t kMatmulInstances = 100;
constexpr std::size_t kMatmulSize = 16;
constexpr double kCriterion4BudgetMs = 5 * 60 * 1000;
constexpr std::size_t kReluInstances = 100;
constexpr std::size_t kReluSide = 16;  // nk = 256
constexpr double kCriterion7BudgetMs = 120 * 1000;
constexpr double kProverRatioLo = 3, kProverRatioHi = 16;
constexpr double kVerifierRatioLo = 2, kVerifierRatioHi = 8;
constexpr std::size_t kFoldPairBytes = 2 * kPointBytes;
constexpr std::size_t kScalingReps = 3;
constexpr std::size_t kSchwartzZippelTrials = 1000;

const FixedPointParams kParams{8, 6};

using Clock = std::chrono::steady_clock;
double since_ms(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int g_failures = 0;

void report(int id, const std::string& title, Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "): " << o.detail.str()
            << std::endl;
  if (!o.pass) ++g_failures;
}

Scalar random_scalar(std::mt19937_64& rng) { return Scalar::from_limbs_reduce({rng(), rng(), rng(), rng()}); }

ScalarMatrix uniform_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int64_t bound) {
  std::uniform_int_distribution<int64_t> dist(-bound, bound);
  ScalarMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (auto& x : m.reshaped()) x = Scalar(dist(rng));
  return m;
}

GroupElement commit_matrix(const GeneratorSet& gens, const ScalarMatrix& m) { return commit(gens.g, matrix_to_mle(m)); }

bool contains(const Verdict& v, const std::string& needle) { return v.reason().find(needle) != std::string::npos; }

// 1. Rounding decomposition over F_131 with t = s = 2.
struct Mod131 {
  static constexpr std::array<uint64_t, 4> kValue{131, 0, 0, 0};
};
using F131 = Fp<Mod131>;

void criterion1() {
  Outcome o;
  const auto start = Clock::now();
  constexpr int p = 131, t = 2, s = 2;
  auto in_range = [](const F131& v, int shift, int bits) {
    // v + shift lands in [0, 2^bits) as a canonical residue.
    const auto c = (v + F131(shift)).symmetric_i64();
    int64_t canon = *c < 0 ? *c + p : *c;
    return canon < (int64_t(1) << bits);
  };
  int checked = 0;
  for (int ai = 0; ai < p; ++ai) {
    const F131 a(ai);
    const int64_t sym = *a.symmetric_i64();
    if (std::abs(sym) >= (1 << (t + s))) continue;
    int solutions = 0;
    F131 found{};
    for (int ap = 0; ap < p; ++ap) {
      for (int e = 0; e < p; ++e) {
        const F131 a_prime(ap), err(e);
        const bool c1 = a == F131(1 << s) * a_prime + err;
        const bool c2 = in_range(a_prime, 1 << (t + 1), t + 2);
        const bool c3 = in_range(err, 1 << (s - 1), s);
        if (c1 && c2 && c3) {
          ++solutions;
          found = a_prime;
        }
      }
    }
    // Integer oracle: floor((a + 2^{s-1}) / 2^s).
    const int64_t want = int64_t(std::floor(double(sym + (1 << (s - 1))) / double(1 << s)));
    o.require(solutions == 1, "a = " + std::to_string(sym) + " has " + std::to_string(solutions) + " solutions");
    o.require(found == F131(want), "a' != floor oracle at a = " + std::to_string(sym));
    o.require(found == round_fixed(a, FixedPointParams{s, t}), "a' != round_fixed at a = " + std::to_string(sym));
    ++checked;
  }
  const double ms = since_ms(start);
  o.require(checked == 31, "expected 31 values of a");
  o.require(ms < kCriterion1BudgetMs, "runtime over budget");
  o.detail << checked << " values of a, unique (a', e) each, equal to round(a); " << ms << " ms";
  report(1, "rounding decomposition oracle, p=131", o);
}

// 2. IPA proof size.
void criterion2(const GeneratorSet& gens) {
  Outcome o;
  std::mt19937_64 rng(2);
  for (std::size_t n = 2; n <= 256; n *= 2) {
    ScalarVector a(static_cast<Eigen::Index>(n)), b(static_cast<Eigen::Index>(n));
    for (auto& x : a) x = random_scalar(rng);
    for (auto& x : b) x = random_scalar(rng);
    const Scalar c = inner_product(a, b);
    const IpaBases bases{gens.g_slice(n), gens.h_slice(n), gens.u, Scalar::one()};
    Transcript ptr = Transcript::fiat_shamir("acceptance/ipa");
    const IpaProof proof = ipa_prove(bases, a, b, c, ptr);
    const std::size_t logn = log2_exact(n);
    const std::size_t group_elements = 2 * proof.folds.size();
    const std::size_t want_bytes = 2 * logn * kPointBytes + 2 * kScalarBytes;
    o.require(group_elements == 2 * logn, "n = " + std::to_string(n) + ": group element count");
    o.require(proof.byte_size() == want_bytes, "n = " + std::to_string(n) + ": byte size");
    o.require(ptr.prover_bytes() == want_bytes, "n = " + std::to_string(n) + ": transcript bytes");
    Transcript vtr = Transcript::fiat_shamir("acceptance/ipa");
    IpaStatement st;
    st.extra = MultiExp(commit(gens.g_slice(n), a) + commit(gens.h_slice(n), b));
    o.require(ipa_verify(bases, st, c, n, proof, vtr), "n = " + std::to_string(n) + ": honest proof rejected");
  }
  o.detail << "n = 2..256: 2 log2(n) points + 2 scalars, transcript bytes equal";
  report(2, "IPA communication", o);
}

// 3. Sum-check round count and degree.
void criterion3(const GeneratorSet& gens) {
  Outcome o;
  std::mt19937_64 rng(3);
  for (std::size_t m = 2; m <= 64; m *= 2) {
    const ScalarMatrix a = uniform_matrix(rng, 2, m, 20);
    const ScalarMatrix b = uniform_matrix(rng, m, 2, 20);
    Transcript tr = Transcript::fiat_shamir("acceptance/sc");
    const MatmulRoundResult res = prove_matmul_round(gens, a, b, kParams, tr);
    o.require(res.proof.sumcheck.rounds.size() == log2_exact(m), "matmul m = " + std::to_string(m) + ": rounds");
    for (const RoundMessage& r : res.proof.sumcheck.rounds) {
      o.require(r.coeffs.size() == 3, "matmul m = " + std::to_string(m) + ": coefficient count");
    }
  }
  for (std::size_t nk : {2, 16, 256}) {
    const ScalarMatrix a = uniform_matrix(rng, nk, 1, 100);
    Transcript tr = Transcript::fiat_shamir("acceptance/sc");
    const ReluResult res = prove_relu(gens, a, commit_matrix(gens, a), relu_bits(kParams), tr);
    o.require(res.proof.sumcheck_eq.rounds.size() == log2_exact(nk), "relu nk = " + std::to_string(nk) + ": rounds");
    for (const RoundMessage& r : res.proof.sumcheck_eq.rounds) {
      o.require(r.coeffs.size() == 4, "relu nk = " + std::to_string(nk) + ": coefficient count");
    }
  }
  o.detail << "matmul m = 2..64: log2(m) rounds of 3 coefficients; relu nk in {2,16,256}: log2(nk) rounds of 4";
  report(3, "sum-check structure", o);
}

// 4. Matmul + rounding sweep.
void criterion4(const GeneratorSet& gens) {
  Outcome o;
  const std::size_t n = kMatmulSize;
  const int64_t b_bound = int64_t(30000 / (n * 128));
  std::size_t honest_ok = 0, cp_shift = 0, e_range = 0, subst_pc = 0, sc_coeff = 0, opening = 0;
  const auto start = Clock::now();
  for (std::size_t inst = 0; inst < kMatmulInstances; ++inst) {
    std::mt19937_64 rng(4000 + inst);
    const ScalarMatrix a = uniform_matrix(rng, n, n, 127);
    const ScalarMatrix b = uniform_matrix(rng, n, n, b_bound);
    const GroupElement p_a = commit_matrix(gens, a), p_b = commit_matrix(gens, b);
    const MatmulDims dims{n, n, n};
    auto verify = [&](const MatmulRoundProof& proof) {
      Transcript tr = Transcript::fiat_shamir("acceptance/mm");
      return verify_matmul_round(gens, p_a, p_b, dims, kParams, proof, tr);
    };

    Transcript ptr = Transcript::fiat_shamir("acceptance/mm");
    const MatmulRoundResult honest = prove_matmul_round(gens, a, b, kParams, ptr);
    const Verdict hv = verify(honest.proof);
    honest_ok += hv.accepted();
    o.require(hv.accepted(), "honest instance " + std::to_string(inst) + ": " + hv.reason());

    // A cheating prover replays the honest prefix, then commits to a C' with
    // one entry off by one. The residual range proof precedes range_cp in the
    // transcript, so proving range_cp cannot change the verdict and is skipped.
    Transcript tr = Transcript::fiat_shamir("acceptance/mm");
    const detail::MatmulPrefix prefix = detail::matmul_prefix(gens, a, b, kParams, tr);
    const Eigen::Index pos = Eigen::Index(rng() % (n * n));
    const Scalar delta = (inst % 2) ? Scalar::one() : -Scalar::one();
    for (const auto strategy : {detail::BitStrategy::kWrapped, detail::BitStrategy::kNonBit}) {
      ScalarMatrix cp = honest.cp;
      cp.reshaped()[pos] += strategy == detail::BitStrategy::kWrapped ? delta : -delta;
      Transcript cheat = tr;
      const MatmulRoundProof bad = detail::matmul_finish_residual(gens, prefix, cp, kParams, strategy, cheat);
      const Verdict v = verify(bad);
      const bool rejected = !v.accepted() && contains(v, "rounding residual");
      (strategy == detail::BitStrategy::kWrapped ? cp_shift : e_range) += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": forged C' verdict '" + v.reason() + "'");
    }

    {
      MatmulRoundProof bad = honest.proof;
      ScalarMatrix c = a * b;
      c.reshaped()[pos] += Scalar::one();
      bad.p_c = commit_matrix(gens, c);
      const bool rejected = !verify(bad).accepted();
      subst_pc += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": substituted P_C accepted");
    }
    {
      MatmulRoundProof bad = honest.proof;
      auto& round = bad.sumcheck.rounds[rng() % bad.sumcheck.rounds.size()];
      round.coeffs[Eigen::Index(rng() % 3)] += Scalar(int64_t(1 + rng() % 1000));
      const bool rejected = !verify(bad).accepted();
      sc_coeff += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": corrupted coefficient accepted");
    }
    {
      MatmulRoundProof bad = honest.proof;
      switch (inst % 3) {
        case 0:
          bad.open_c.value += Scalar::one();
          break;
        case 1:
          bad.open_c.ipa.a += Scalar::one();
          break;
        default:
          bad.open_c.ipa.folds[rng() % bad.open_c.ipa.folds.size()].first += GroupElement::from_affine(gens.g[0]);
          break;
      }
      const bool rejected = !verify(bad).accepted();
      opening += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": corrupted opening accepted");
    }
  }
  const double ms = since_ms(start);
  o.require(ms < kCriterion4BudgetMs, "runtime " + std::to_string(ms / 1000) + " s over budget");
  o.detail << "honest " << honest_ok << "/" << kMatmulInstances << "; rejected: C' +-1 " << cp_shift
           << ", E range (non-bit digits) " << e_range << ", substituted P_C " << subst_pc << ", sum-check coefficient "
           << sc_coeff << ", opening " << opening << "; " << ms / 1000 << " s";
  report(4, "matmul+rounding completeness/soundness, n=m=k=16", o);
}

// 5. ReLU sweep.
void criterion5(const GeneratorSet& gens) {
  Outcome o;
  const std::size_t bits = relu_bits(kParams);
  const std::size_t nk = kReluSide * kReluSide;
  std::size_t honest_ok = 0, neg_y = 0, wrong_mag = 0, bad_b = 0, sc_coeff = 0, subst = 0;
  const auto start = Clock::now();
  for (std::size_t inst = 0; inst < kReluInstances; ++inst) {
    std::mt19937_64 rng(5000 + inst);
    ScalarMatrix a = uniform_matrix(rng, kReluSide, kReluSide, 127);
    const Eigen::Index pos = Eigen::Index(rng() % nk);
    a.reshaped()[pos] = Scalar(-int64_t(1 + rng() % 127));
    const GroupElement p_a = commit_matrix(gens, a);
    auto verify = [&](const ReluProof& proof) {
      Transcript tr = Transcript::fiat_shamir("acceptance/relu");
      return verify_relu(gens, p_a, ReluShape{nk, bits}, proof, tr);
    };
    auto forge = [&](const ScalarVector& y, const ScalarVector* b) {
      Transcript tr = Transcript::fiat_shamir("acceptance/relu");
      return detail::relu_with(gens, a, p_a, y, b, bits, detail::BitStrategy::kWrapped, tr);
    };

    Transcript ptr = Transcript::fiat_shamir("acceptance/relu");
    const ReluResult honest = prove_relu(gens, a, p_a, bits, ptr);
    const Verdict hv = verify(honest.proof);
    honest_ok += hv.accepted();
    o.require(hv.accepted(), "honest instance " + std::to_string(inst) + ": " + hv.reason());

    const ScalarVector abs_a = matrix_to_mle(a).unaryExpr([](const Scalar& x) {
      return *x.symmetric_i64() < 0 ? -x : x;
    });
    {
      ScalarVector y = abs_a;
      y[pos] = -y[pos];  // y = a at a negative entry, so B passes a through
      const bool rejected = !verify(forge(y, nullptr)).accepted();
      neg_y += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": negative Y accepted");
    }
    {
      ScalarVector y = abs_a;
      y[pos] += Scalar::one();
      const bool rejected = !verify(forge(y, nullptr)).accepted();
      wrong_mag += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": |Y| != |A| accepted");
    }
    {
      ScalarVector b = matrix_to_mle(honest.b);
      b[Eigen::Index(rng() % nk)] += Scalar::one();
      const bool rejected = !verify(forge(abs_a, &b)).accepted();
      bad_b += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": B != (A + Y) / 2 accepted");
    }
    {
      ReluProof bad = honest.proof;
      auto& round = bad.sumcheck_eq.rounds[rng() % bad.sumcheck_eq.rounds.size()];
      round.coeffs[Eigen::Index(rng() % 4)] += Scalar(int64_t(1 + rng() % 1000));
      const bool rejected = !verify(bad).accepted();
      sc_coeff += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": corrupted coefficient accepted");
    }
    {
      ReluProof bad = honest.proof;
      (inst % 2 ? bad.p_y : bad.p_b) += GroupElement::from_affine(gens.g[std::size_t(pos)]);
      const bool rejected = !verify(bad).accepted();
      subst += rejected;
      o.require(rejected, "instance " + std::to_string(inst) + ": substituted commitment accepted");
    }
  }
  const double ms = since_ms(start);
  o.detail << "honest " << honest_ok << "/" << kReluInstances << "; rejected: negative Y " << neg_y << ", |Y| != |A| "
           << wrong_mag << ", B != (A+Y)/2 " << bad_b << ", sum-check coefficient " << sc_coeff
           << ", substituted P_Y/P_B " << subst << "; " << ms / 1000 << " s";
  report(5, "ReLU completeness/soundness, nk=256", o);
}

// 6. Range proof boundaries.
void criterion6(const GeneratorSet& gens) {
  Outcome o;
  for (const auto& [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {4, 8}, {16, 16}}) {
    const std::string tag = "(m, n) = (" + std::to_string(m) + ", " + std::to_string(n) + ")";
    const RangeShape shape{m, n};
    auto run = [&](const std::vector<Scalar>& values, std::optional<detail::BitStrategy> strategy) {
      Transcript ptr = Transcript::fiat_shamir("acceptance/range");
      const RangeProof proof = strategy ? detail::rp_prove_any(gens, values, n, *strategy, ptr)
                                        : rp_prove(gens, values, n, ptr);
      Transcript vtr = Transcript::fiat_shamir("acceptance/range");
      return rp_verify(gens, MultiExp().add(values, gens.g_slice(m)), shape, proof, vtr);
    };
    const Scalar top = Scalar(int64_t(1) << n) - Scalar::one();
    o.require(run(std::vector<Scalar>(m, Scalar::zero()), std::nullopt).accepted(), tag + ": v = 0 rejected");
    o.require(run(std::vector<Scalar>(m, top), std::nullopt).accepted(), tag + ": v = 2^n - 1 rejected");
    std::vector<Scalar> over(m, top);
    over[m - 1] = Scalar(int64_t(1) << n);
    o.require(!run(over, detail::BitStrategy::kWrapped).accepted(), tag + ": v = 2^n with wrapped bits accepted");
    o.require(!run(over, detail::BitStrategy::kNonBit).accepted(), tag + ": v = 2^n with a non-bit digit accepted");
  }
  o.detail << "(1,2), (4,8), (16,16): 0 and 2^n-1 accepted; 2^n as wrapped bits or a non-bit digit rejected";
  report(6, "range proof boundaries", o);
}

// 7. Case study.
void criterion7(const std::string& csv_dir) {
  Outcome o;
  const ModelSpec spec = case_study_model();
  const ModelShape shape = spec.shape();
  const ScalarVector x = case_study_input();
  std::size_t params = 0;
  for (const Layer& l : spec.layers) {
    if (const auto* lin = std::get_if<Linear>(&l)) params += std::size_t(lin->weights.size());
  }
  const auto start = Clock::now();
  const GeneratorSet gens = derive_generators("rangearith/acceptance", model_tau(shape));
  const std::vector<GroupElement> weights = register_model(gens, spec);
  const double setup_ms = since_ms(start);
  Transcript ptr = Transcript::fiat_shamir(kInferenceDomain);
  auto t = Clock::now();
  const InferenceResult res = prove_inference(gens, spec, x, ptr);
  const double prover_ms = since_ms(t);
  Transcript vtr = Transcript::fiat_shamir(kInferenceDomain);
  t = Clock::now();
  const Verdict v = verify_inference(gens, shape, weights, x, res.output, res.proof, vtr);
  const double verifier_ms = since_ms(t);
  const double total_ms = since_ms(start);

  o.require(shape.input_dim == 784 && params > 9000 && params < 11000, "shape differs from the case study");
  o.require(v.accepted(), "honest proof rejected: " + v.reason());
  o.require(res.output == reference_inference(spec, x), "output differs from the reference engine");
  o.require(ptr.prover_bytes() == res.proof.byte_size(), "byte accounting");
  o.require(total_ms < kCriterion7BudgetMs, "over the time budget");
  ScalarVector y = res.output;
  y[0] += Scalar::one();
  Transcript ttr = Transcript::fiat_shamir(kInferenceDomain);
  o.require(!verify_inference(gens, shape, weights, x, y, res.proof, ttr).accepted(), "perturbed output accepted");

  std::ofstream csv(csv_dir + "/case_study.csv");
  write_bench_csv(csv, {BenchRecord{"nn", shape.input_dim, params, shape.layers.size(), prover_ms, verifier_ms,
                                    std::size_t(ptr.prover_bytes()), TranscriptMode::kFiatShamir}});
  o.detail << "784-12-12-12-10, " << params << " parameters, s=8 t=6: accepted, output equals reference; setup "
           << setup_ms << " ms, prover " << prover_ms << " ms, verifier " << verifier_ms << " ms, " << ptr.prover_bytes()
           << " proof bytes";
  report(7, "end-to-end case study", o);
}

// 8. Scaling trends.
void criterion8(const std::string& csv_dir) {
  Outcome o;
  BenchConfig config{{16, 32, 64}, kScalingReps, TranscriptMode::kFiatShamir, 8};
  const GeneratorSet gens = derive_generators("rangearith/acceptance/bench", bench_tau(BenchOp::kMatmul, config));
  const std::vector<BenchRecord> rec = bench_matmul(gens, config);
  std::ofstream csv(csv_dir + "/scaling.csv");
  write_bench_csv(csv, rec);
  o.require(rec.size() == 3, "record count");
  std::vector<long> growth;
  for (std::size_t i = 1; i < rec.size(); ++i) {
    const double pr = rec[i].prover_ms / rec[i - 1].prover_ms;
    const double vr = rec[i].verifier_ms / rec[i - 1].verifier_ms;
    const std::string step = std::to_string(rec[i - 1].n) + "->" + std::to_string(rec[i].n);
    o.require(rec[i].prover_ms > rec[i - 1].prover_ms, step + ": prover time not increasing");
    o.require(pr >= kProverRatioLo && pr <= kProverRatioHi, step + ": prover ratio " + std::to_string(pr));
    o.require(vr >= kVerifierRatioLo && vr <= kVerifierRatioHi, step + ": verifier ratio " + std::to_string(vr));
    growth.push_back(long(rec[i].proof_bytes) - long(rec[i - 1].proof_bytes));
    o.detail << step << " prover x" << pr << ", verifier x" << vr << ", +" << growth.back() << " bytes; ";
  }
  // Logarithmic size: the same additive step per doubling, up to two fold pairs.
  o.require(growth[0] > 0 && growth[1] > 0, "proof size not growing");
  o.require(std::labs(growth[1] - growth[0]) <= long(2 * kFoldPairBytes), "proof size step not constant");
  o.detail << "step difference " << std::labs(growth[1] - growth[0]) << " <= " << 2 * kFoldPairBytes << " bytes";
  report(8, "scaling trends, n in {16,32,64}", o);
}

// 9. MLE against the direct formula, and distinct tables disagreeing at a
// random point.
Scalar mle_direct(const ScalarVector& f, const std::vector<Scalar>& x) {
  const std::size_t v = x.size();
  Scalar acc = Scalar::zero();
  for (std::size_t w = 0; w < (std::size_t(1) << v); ++w) {
    Scalar term = f[Eigen::Index(w)];
    for (std::size_t i = 0; i < v; ++i) {
      const bool bit = (w >> (v - 1 - i)) & 1;  // x_1 is the most significant bit
      term *= bit ? x[i] : Scalar::one() - x[i];
    }
    acc += term;
  }
  return acc;
}

void criterion9() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::size_t exact = 0;
  for (std::size_t v = 0; v <= 4; ++v) {
    for (int rep = 0; rep < 50; ++rep) {
      ScalarVector f(static_cast<Eigen::Index>(std::size_t(1) << v));
      for (auto& e : f) e = random_scalar(rng);
      std::vector<Scalar> x(v);
      for (auto& e : x) e = random_scalar(rng);
      const bool ok = mle_eval<Scalar>(f, std::span<const Scalar>(x)) == mle_direct(f, x);
      exact += ok;
      o.require(ok, "mle_eval differs from the direct formula at v = " + std::to_string(v));
    }
  }
  std::size_t disagree = 0;
  for (std::size_t trial = 0; trial < kSchwartzZippelTrials; ++trial) {
    const std::size_t v = 1 + trial % 4;
    ScalarVector f(static_cast<Eigen::Index>(std::size_t(1) << v));
    for (auto& e : f) e = random_scalar(rng);
    ScalarVector g = f;
    g[Eigen::Index(rng() % std::size_t(g.size()))] += Scalar(int64_t(1 + rng() % 1000));
    std::vector<Scalar> x(v);
    for (auto& e : x) e = random_scalar(rng);
    disagree += mle_eval<Scalar>(f, std::span<const Scalar>(x)) != mle_eval<Scalar>(g, std::span<const Scalar>(x));
  }
  o.require(disagree == kSchwartzZippelTrials, "distinct tables agreed at a random point");
  o.detail << exact << "/250 exact evaluations for v <= 4; " << disagree << "/" << kSchwartzZippelTrials
           << " distinct tables disagree";
  report(9, "MLE and Schwartz-Zippel", o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string csv_dir = ".";
  std::vector<int> only;
  app.add_option("--csv-dir", csv_dir, "Where timing CSVs are written");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };

  const GeneratorSet gens = derive_generators("rangearith/acceptance", 4096);
  const std::vector<std::pair<int, std::function<void()>>> criteria{
      {1, [] { criterion1(); }},
      {2, [&] { criterion2(gens); }},
      {3, [&] { criterion3(gens); }},
      {4, [&] { criterion4(gens); }},
      {5, [&] { criterion5(gens); }},
      {6, [&] { criterion6(gens); }},
      {7, [&] { criterion7(csv_dir); }},
      {8, [&] { criterion8(csv_dir); }},
      {9, [] { criterion9(); }},
  };
  for (const auto& [id, run] : criteria) {
    if (!wanted(id)) continue;
    try {
      run();
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << id << ": exception: " << e.what() << std::endl;
      ++g_failures;
    }
  }
  return g_failures == 0 ? 0 : 1;
}
