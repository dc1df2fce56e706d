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
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ra/group.hpp"
#include "ra/transcript.hpp"

namespace ra {

enum class BenchOp { kMatmul, kRelu, kNetwork };

struct BenchRecord {
  std::string op;  // matmul_round, relu or nn
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double prover_ms = 0;
  double verifier_ms = 0;
  std::size_t proof_bytes = 0;  // prover bytes counted by the transcript
  TranscriptMode mode = TranscriptMode::kFiatShamir;
};

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::size_t reps = 3;
  TranscriptMode mode = TranscriptMode::kFiatShamir;
  uint64_t seed = 1;
};

BenchOp parse_bench_op(const std::string& name);

/// Generators the sweep needs.
std::size_t bench_tau(BenchOp op, const BenchConfig& config);

/// Square n x n x n instances with s = 8, t = 6: A in [-127, 127] and B
/// bounded so the rounded product stays in range. Medians over reps.
std::vector<BenchRecord> bench_matmul(const GeneratorSet& gens, const BenchConfig& config);

/// ReLU over an n x n matrix with entries in [-127, 127] and t + 2 = 8 bits.
std::vector<BenchRecord> bench_relu(const GeneratorSet& gens, const BenchConfig& config);

/// The 784-input case-study network; sizes are ignored. n is the input
/// dimension, m the parameter count, k the layer count.
std::vector<BenchRecord> bench_network(const GeneratorSet& gens, const BenchConfig& config);

std::vector<BenchRecord> run_bench(BenchOp op, const GeneratorSet& gens, const BenchConfig& config);

/// Header op,n,m,k,prover_ms,verifier_ms,proof_bytes,mode.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace ra
