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


#include "ra/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <stdexcept>

#include "ra/layerproto.hpp"
#include "ra/mle.hpp"
#include "ra/pipeline.hpp"

namespace ra {
namespace {

const FixedPointParams kBenchParams{8, 6};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

uint64_t instance_seed(const BenchConfig& c, std::size_t size, std::size_t rep) {
  return c.seed * 0x9e3779b97f4a7c15ULL + size * 1000003ULL + rep;
}

/// A prover and a verifier transcript that see the same challenges.
std::pair<Transcript, Transcript> transcript_pair(const BenchConfig& c, uint64_t seed, const char* domain) {
  if (c.mode == TranscriptMode::kFiatShamir) return {Transcript::fiat_shamir(domain), Transcript::fiat_shamir(domain)};
  std::mt19937_64 rng(seed);
  Transcript::Seed s{};
  for (auto& b : s) b = uint8_t(rng());
  return {Transcript::interactive(s), Transcript::interactive(s)};
}

ScalarMatrix uniform_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int64_t bound) {
  std::uniform_int_distribution<int64_t> dist(-bound, bound);
  ScalarMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (auto& x : m.reshaped()) x = Scalar(dist(rng));
  return m;
}

void require_pow2(const BenchConfig& c) {
  if (c.reps == 0) throw std::invalid_argument("bench: reps must be positive");
  for (std::size_t n : c.sizes) {
    if (!is_pow2(n)) throw std::invalid_argument("bench: size " + std::to_string(n) + " is not a power of two");
  }
}

struct Sample {
  double prover_ms;
  double verifier_ms;
  std::size_t bytes;
};

BenchRecord summarize(std::string op, std::size_t n, std::size_t m, std::size_t k, const std::vector<Sample>& runs,
                      TranscriptMode mode) {
  std::vector<double> p, v;
  for (const Sample& s : runs) {
    if (s.bytes != runs.front().bytes) throw std::logic_error("bench: proof size varies across reps");
    p.push_back(s.prover_ms);
    v.push_back(s.verifier_ms);
  }
  return {std::move(op), n, m, k, median(p), median(v), runs.front().bytes, mode};
}

}  // namespace

BenchOp parse_bench_op(const std::string& name) {
  if (name == "matmul" || name == "matmul_round") return BenchOp::kMatmul;
  if (name == "relu") return BenchOp::kRelu;
  if (name == "nn") return BenchOp::kNetwork;
  throw std::invalid_argument("bench: unknown op " + name);
}

std::size_t bench_tau(BenchOp op, const BenchConfig& config) {
  std::size_t tau = 1;
  switch (op) {
    case BenchOp::kMatmul:
      for (std::size_t n : config.sizes) tau = std::max(tau, matmul_tau(MatmulDims{n, n, n}, kBenchParams));
      break;
    case BenchOp::kRelu:
      for (std::size_t n : config.sizes) tau = std::max(tau, relu_tau(ReluShape{n * n, relu_bits(kBenchParams)}));
      break;
    case BenchOp::kNetwork:
      tau = model_tau(case_study_model().shape());
      break;
  }
  return tau;
}

std::vector<BenchRecord> bench_matmul(const GeneratorSet& gens, const BenchConfig& config) {
  require_pow2(config);
  std::vector<BenchRecord> out;
  for (std::size_t n : config.sizes) {
    // |C'| <= n * 127 * b_bound / 256 must stay below 2^{t+1} = 128.
    const int64_t b_bound = std::max<int64_t>(1, int64_t(30000 / (n * 128)));
    std::vector<Sample> runs;
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      const uint64_t seed = instance_seed(config, n, rep);
      std::mt19937_64 rng(seed);
      const ScalarMatrix a = uniform_matrix(rng, n, n, 127);
      const ScalarMatrix b = uniform_matrix(rng, n, n, b_bound);
      auto [ptr, vtr] = transcript_pair(config, seed, "rangearith/bench/matmul");
      auto start = Clock::now();
      const MatmulRoundResult res = prove_matmul_round(gens, a, b, kBenchParams, ptr);
      const double prover_ms = elapsed_ms(start);
      const GroupElement p_a = commit(gens.g, matrix_to_mle(a));
      const GroupElement p_b = commit(gens.g, matrix_to_mle(b));
      start = Clock::now();
      const Verdict v = verify_matmul_round(gens, p_a, p_b, MatmulDims{n, n, n}, kBenchParams, res.proof, vtr);
      const double verifier_ms = elapsed_ms(start);
      if (!v) throw std::logic_error("bench: honest matmul proof rejected: " + v.reason());
      runs.push_back({prover_ms, verifier_ms, std::size_t(ptr.prover_bytes())});
    }
    out.push_back(summarize("matmul_round", n, n, n, runs, config.mode));
  }
  return out;
}

std::vector<BenchRecord> bench_relu(const GeneratorSet& gens, const BenchConfig& config) {
  require_pow2(config);
  const std::size_t bits = relu_bits(kBenchParams);
  std::vector<BenchRecord> out;
  for (std::size_t n : config.sizes) {
    std::vector<Sample> runs;
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      const uint64_t seed = instance_seed(config, n, rep);
      std::mt19937_64 rng(seed);
      const ScalarMatrix a = uniform_matrix(rng, n, n, 127);
      const GroupElement p_a = commit(gens.g, matrix_to_mle(a));
      auto [ptr, vtr] = transcript_pair(config, seed, "rangearith/bench/relu");
      auto start = Clock::now();
      const ReluResult res = prove_relu(gens, a, p_a, bits, ptr);
      const double prover_ms = elapsed_ms(start);
      start = Clock::now();
      const Verdict v = verify_relu(gens, p_a, ReluShape{n * n, bits}, res.proof, vtr);
      const double verifier_ms = elapsed_ms(start);
      if (!v) throw std::logic_error("bench: honest relu proof rejected: " + v.reason());
      runs.push_back({prover_ms, verifier_ms, std::size_t(ptr.prover_bytes())});
    }
    out.push_back(summarize("relu", n, 0, n, runs, config.mode));
  }
  return out;
}

std::vector<BenchRecord> bench_network(const GeneratorSet& gens, const BenchConfig& config) {
  if (config.reps == 0) throw std::invalid_argument("bench: reps must be positive");
  const ModelSpec spec = case_study_model(config.seed);
  const ModelShape shape = spec.shape();
  const std::vector<GroupElement> weights = register_model(gens, spec);
  std::size_t params = 0;
  for (const Layer& l : spec.layers) {
    if (const auto* lin = std::get_if<Linear>(&l)) params += std::size_t(lin->weights.size());
  }
  std::vector<Sample> runs;
  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    const uint64_t seed = instance_seed(config, shape.input_dim, rep);
    const ScalarVector x = case_study_input(seed);
    auto [ptr, vtr] = transcript_pair(config, seed, kInferenceDomain);
    auto start = Clock::now();
    const InferenceResult res = prove_inference(gens, spec, x, ptr);
    const double prover_ms = elapsed_ms(start);
    start = Clock::now();
    const Verdict v = verify_inference(gens, shape, weights, x, res.output, res.proof, vtr);
    const double verifier_ms = elapsed_ms(start);
    if (!v) throw std::logic_error("bench: honest inference proof rejected: " + v.reason());
    runs.push_back({prover_ms, verifier_ms, std::size_t(ptr.prover_bytes())});
  }
  return {summarize("nn", shape.input_dim, params, shape.layers.size(), runs, config.mode)};
}

std::vector<BenchRecord> run_bench(BenchOp op, const GeneratorSet& gens, const BenchConfig& config) {
  switch (op) {
    case BenchOp::kMatmul:
      return bench_matmul(gens, config);
    case BenchOp::kRelu:
      return bench_relu(gens, config);
    case BenchOp::kNetwork:
      return bench_network(gens, config);
  }
  return {};
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "op,n,m,k,prover_ms,verifier_ms,proof_bytes,mode\n";
  for (const BenchRecord& r : records) {
    out << r.op << ',' << r.n << ',' << r.m << ',' << r.k << ',' << std::fixed << std::setprecision(3) << r.prover_ms
        << ',' << r.verifier_ms << ',' << r.proof_bytes << ','
        << (r.mode == TranscriptMode::kFiatShamir ? "fs" : "interactive") << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

}  // namespace ra
