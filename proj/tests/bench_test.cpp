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

#include <gtest/gtest.h>

#include <sstream>

#include "ra/layerproto.hpp"
#include "support.hpp"

namespace ra {
namespace {

using testing::shared_generators;

TEST(Bench, MatmulRecordsAndLogarithmicSize) {
  const BenchConfig config{{4, 8, 16}, 1, TranscriptMode::kFiatShamir, 3};
  ASSERT_LE(bench_tau(BenchOp::kMatmul, config), shared_generators().tau());
  const auto rec = bench_matmul(shared_generators(), config);
  ASSERT_EQ(rec.size(), 3U);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    EXPECT_EQ(rec[i].op, "matmul_round");
    EXPECT_EQ(rec[i].n, config.sizes[i]);
    EXPECT_GT(rec[i].prover_ms, 0);
    EXPECT_GT(rec[i].verifier_ms, 0);
  }
  EXPECT_EQ(rec[2].proof_bytes - rec[1].proof_bytes, rec[1].proof_bytes - rec[0].proof_bytes);
}

TEST(Bench, ProofBytesMatchProofSize) {
  const BenchConfig config{{8}, 1, TranscriptMode::kInteractive, 5};
  const auto rec = bench_matmul(shared_generators(), config);
  const ScalarMatrix a = ScalarMatrix::Constant(8, 8, Scalar::one());
  Transcript tr = Transcript::fiat_shamir();
  const MatmulRoundResult res = prove_matmul_round(shared_generators(), a, a, FixedPointParams{8, 6}, tr);
  EXPECT_EQ(rec[0].proof_bytes, res.proof.byte_size());
}

TEST(Bench, ReluAndCsv) {
  const BenchConfig config{{2, 4}, 2, TranscriptMode::kFiatShamir, 1};
  const auto rec = run_bench(BenchOp::kRelu, shared_generators(), config);
  ASSERT_EQ(rec.size(), 2U);
  std::ostringstream out;
  write_bench_csv(out, rec);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "op,n,m,k,prover_ms,verifier_ms,proof_bytes,mode");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("relu,2,0,2,", 0), 0U) << line;
  EXPECT_EQ(line.substr(line.size() - 3), ",fs");
}

TEST(Bench, RejectsBadConfig) {
  EXPECT_THROW(parse_bench_op("conv"), std::invalid_argument);
  EXPECT_THROW(bench_matmul(shared_generators(), BenchConfig{{3}, 1, TranscriptMode::kFiatShamir, 1}),
               std::invalid_argument);
  EXPECT_THROW(bench_matmul(shared_generators(), BenchConfig{{4}, 0, TranscriptMode::kFiatShamir, 1}),
               std::invalid_argument);
}

}  // namespace
}  // namespace ra
