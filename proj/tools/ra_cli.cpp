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


#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "ra/bench.hpp"
#include "ra/pipeline.hpp"

namespace {

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw CliError("cannot write " + path);
}

ra::GeneratorSet load_generators(const std::string& path, std::size_t needed) {
  ra::GeneratorSet gens = ra::read_generators(read_file(path));
  if (gens.tau() < needed) {
    throw CliError(path + " holds " + std::to_string(gens.tau()) + " generators, the model needs " +
                   std::to_string(needed));
  }
  return gens;
}

struct SetupArgs {
  std::string seed = "rangearith";
  std::size_t tau = 16384;
  std::string out;
};

struct FixtureArgs {
  bool case_study = false;
  std::vector<std::size_t> dims;
  std::vector<int64_t> bounds;
  int64_t input_max = 255;
  uint64_t seed = 1;
  int s = 8;
  int t = 6;
  std::string model;
  std::string input;
};

struct RegisterArgs {
  std::string model, gens, out;
};

struct ProveArgs {
  std::string model, input, gens, out, output;
  bool print_output = false;
};

struct VerifyArgs {
  std::string model, input, output, proof, gens, commits;
};

struct BenchArgs {
  std::string op = "matmul";
  std::vector<std::size_t> sizes{16, 32, 64};
  std::size_t reps = 3;
  std::string mode = "fs";
  uint64_t seed = 1;
  std::string csv;
  std::string gens_seed = "rangearith/bench";
};

int run_setup(const SetupArgs& a) {
  write_file(a.out, ra::write_generators(ra::derive_generators(a.seed, a.tau)));
  std::cout << "wrote " << a.tau << " generators to " << a.out << "\n";
  return kAccept;
}

int run_fixture(const FixtureArgs& a) {
  ra::ModelSpec spec;
  ra::ScalarVector x;
  if (a.case_study) {
    spec = ra::case_study_model(a.seed);
    x = ra::case_study_input(a.seed);
  } else {
    if (a.dims.size() < 2) throw CliError("--dims needs at least two entries");
    spec = ra::seeded_mlp(a.seed, ra::FixedPointParams{a.s, a.t}, a.dims, a.bounds);
    x = ra::seeded_input(a.seed, a.dims.front(), a.input_max);
  }
  write_file(a.model, ra::write_model(spec));
  write_file(a.input, ra::write_vector(x));
  std::cout << "model needs tau >= " << ra::model_tau(spec.shape()) << "\n";
  return kAccept;
}

int run_register(const RegisterArgs& a) {
  const ra::ModelSpec spec = ra::read_model(read_file(a.model));
  const ra::GeneratorSet gens = load_generators(a.gens, ra::model_tau(spec.shape()));
  write_file(a.out, ra::write_commitments(ra::register_model(gens, spec)));
  return kAccept;
}

int run_prove(const ProveArgs& a) {
  const ra::ModelSpec spec = ra::read_model(read_file(a.model));
  const ra::ScalarVector x = ra::read_vector(read_file(a.input));
  const ra::GeneratorSet gens = load_generators(a.gens, ra::model_tau(spec.shape()));
  ra::ProofFile file;
  ra::Transcript tr = file.transcript();
  const ra::InferenceResult res = ra::prove_inference(gens, spec, x, tr);
  file.proof = res.proof;
  write_file(a.out, ra::write_proof_file(file));
  if (!a.output.empty()) write_file(a.output, ra::write_vector(res.output));
  if (a.print_output) {
    for (const ra::Scalar& y : res.output) std::cout << ra::decode_fixed(y, spec.params) << "\n";
  }
  std::cerr << "proof bytes " << tr.prover_bytes() << "\n";
  return kAccept;
}

int run_verify(const VerifyArgs& a) {
  const ra::ModelSpec spec = ra::read_model(read_file(a.model));
  const ra::ModelShape shape = spec.shape();
  const ra::ScalarVector x = ra::read_vector(read_file(a.input));
  const ra::ScalarVector y = ra::read_vector(read_file(a.output));
  const ra::ProofFile file = ra::read_proof_file(read_file(a.proof));
  const ra::GeneratorSet gens = load_generators(a.gens, ra::model_tau(shape));
  const std::vector<ra::GroupElement> weights =
      a.commits.empty() ? ra::register_model(gens, spec) : ra::read_commitments(read_file(a.commits));
  ra::Transcript tr = file.transcript();
  const ra::Verdict v = ra::verify_inference(gens, shape, weights, x, y, file.proof, tr);
  if (v) {
    std::cout << "accept\n";
    return kAccept;
  }
  std::cout << "reject: " << v.reason() << "\n";
  return kReject;
}

int run_bench(const BenchArgs& a) {
  const ra::BenchOp op = ra::parse_bench_op(a.op);
  if (a.mode != "fs" && a.mode != "interactive") throw CliError("--mode must be fs or interactive");
  const ra::BenchConfig config{a.sizes, a.reps,
                               a.mode == "fs" ? ra::TranscriptMode::kFiatShamir : ra::TranscriptMode::kInteractive,
                               a.seed};
  const ra::GeneratorSet gens = ra::derive_generators(a.gens_seed, ra::bench_tau(op, config));
  const std::vector<ra::BenchRecord> records = ra::run_bench(op, gens, config);
  if (a.csv.empty() || a.csv == "-") {
    ra::write_bench_csv(std::cout, records);
  } else {
    std::ofstream out(a.csv);
    ra::write_bench_csv(out, records);
    if (!out) throw CliError("cannot write " + a.csv);
  }
  return kAccept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-arithmetic proofs for fixed-point inference"};
  app.require_subcommand(1);

  SetupArgs setup;
  auto* c_setup = app.add_subcommand("setup", "Derive public generators");
  c_setup->add_option("--seed", setup.seed, "Generator seed");
  c_setup->add_option("--tau", setup.tau, "Number of generators")->check(CLI::PositiveNumber);
  c_setup->add_option("--out", setup.out, "Output file")->required();

  FixtureArgs fixture;
  auto* c_fixture = app.add_subcommand("fixture", "Write a seeded model and input");
  c_fixture->add_flag("--case-study", fixture.case_study, "784-12-12-12-10 network");
  c_fixture->add_option("--dims", fixture.dims, "Layer widths, input first")->delimiter(',');
  c_fixture->add_option("--bounds", fixture.bounds, "Weight bound per linear layer")->delimiter(',');
  c_fixture->add_option("--input-max", fixture.input_max, "Input entries in [0, max]");
  c_fixture->add_option("--seed", fixture.seed, "Fixture seed");
  c_fixture->add_option("--s", fixture.s, "Fractional bits");
  c_fixture->add_option("--t", fixture.t, "Integer bits");
  c_fixture->add_option("--model", fixture.model, "Model file to write")->required();
  c_fixture->add_option("--input", fixture.input, "Input vector file to write")->required();

  RegisterArgs reg;
  auto* c_register = app.add_subcommand("register", "Commit to the model weights");
  c_register->add_option("--model", reg.model)->required();
  c_register->add_option("--gens", reg.gens)->required();
  c_register->add_option("--out", reg.out)->required();

  ProveArgs prove;
  auto* c_prove = app.add_subcommand("prove", "Run inference and prove it");
  c_prove->add_option("--model", prove.model)->required();
  c_prove->add_option("--input", prove.input)->required();
  c_prove->add_option("--gens", prove.gens)->required();
  c_prove->add_option("--out", prove.out, "Proof file to write")->required();
  c_prove->add_option("--output", prove.output, "Output vector file to write");
  c_prove->add_flag("--print-output", prove.print_output, "Print the output as real numbers");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Check a proof; exit 0 accept, 1 reject, 2 bad input");
  c_verify->add_option("--model", verify.model)->required();
  c_verify->add_option("--input", verify.input)->required();
  c_verify->add_option("--output", verify.output)->required();
  c_verify->add_option("--proof", verify.proof)->required();
  c_verify->add_option("--gens", verify.gens)->required();
  c_verify->add_option("--commits", verify.commits, "Registered weight commitments");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Scaling benchmarks as CSV");
  c_bench->add_option("--op", bench.op, "matmul, relu or nn");
  c_bench->add_option("--sizes", bench.sizes, "Powers of two")->delimiter(',');
  c_bench->add_option("--reps", bench.reps, "Repetitions per size")->check(CLI::PositiveNumber);
  c_bench->add_option("--mode", bench.mode, "fs or interactive");
  c_bench->add_option("--seed", bench.seed, "Instance seed");
  c_bench->add_option("--csv", bench.csv, "Output file, stdout by default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*c_setup) return run_setup(setup);
    if (*c_fixture) return run_fixture(fixture);
    if (*c_register) return run_register(reg);
    if (*c_prove) return run_prove(prove);
    if (*c_verify) return run_verify(verify);
    if (*c_bench) return run_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
