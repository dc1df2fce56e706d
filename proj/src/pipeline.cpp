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


#include "ra/pipeline.hpp"

#include <algorithm>
#include <random>

#include "ra/mle.hpp"

namespace ra {
namespace {

constexpr uint32_t kFormatVersion = 1;

std::string layer_name(std::size_t i, LayerKind kind) {
  return "layer " + std::to_string(i) + (kind == LayerKind::kLinear ? " (linear)" : " (relu)");
}

int64_t checked_i64(const Scalar& x, const char* what) {
  const auto v = x.symmetric_i64();
  if (!v) throw OverflowError(std::string(what) + " does not fit 64 bits");
  return *v;
}

bool below(__int128 v, std::size_t bits) {
  const __int128 mag = v < 0 ? -v : v;
  return bits >= 126 || mag < (__int128(1) << bits);
}

void bind_statement(Transcript& tr, const ModelShape& shape, const std::vector<GroupElement>& weights,
                    const GroupElement& input_commitment) {
  tr.bind_u64("nn/s", uint64_t(shape.params.s));
  tr.bind_u64("nn/t", uint64_t(shape.params.t));
  tr.bind_u64("nn/input_dim", shape.input_dim);
  tr.bind_u64("nn/layers", shape.layers.size());
  for (const LayerShape& l : shape.layers) {
    tr.bind_u64("nn/kind", uint64_t(l.kind));
    tr.bind_u64("nn/in", l.in_dim);
    tr.bind_u64("nn/out", l.out_dim);
    tr.bind_u64("nn/bits", l.relu_bits);
  }
  for (const GroupElement& w : weights) tr.bind_point("nn/W", w);
  tr.bind_point("nn/x", input_commitment);
}

ScalarMatrix as_column(const ScalarVector& v, std::size_t rows) {
  ScalarMatrix m = ScalarMatrix::Constant(Eigen::Index(rows), 1, Scalar::zero());
  m.col(0).head(v.size()) = v;
  return m;
}

MatmulDims linear_dims(const LayerShape& l) { return {next_pow2(l.out_dim), next_pow2(l.in_dim), 1}; }

}  // namespace

std::size_t ModelShape::linear_count() const {
  return std::size_t(std::count_if(layers.begin(), layers.end(),
                                   [](const LayerShape& l) { return l.kind == LayerKind::kLinear; }));
}

void ModelSpec::validate() const {
  try {
    params.validate<Scalar>();
  } catch (const FieldError& e) {
    throw ModelError(e.what());
  }
  if (input_dim == 0) throw ModelError("model: input dimension is zero");
  std::size_t dim = input_dim;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto* lin = std::get_if<Linear>(&layers[i]);
    if (!lin) continue;
    const ScalarMatrix& w = lin->weights;
    const std::string name = layer_name(i, LayerKind::kLinear);
    if (w.rows() == 0 || std::size_t(w.cols()) != dim) {
      throw ModelError(name + ": weights are " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                       " for input dimension " + std::to_string(dim));
    }
    if (!fits_modulus(params, next_pow2(dim))) throw ModelError(name + ": modulus too small for this width");
    for (const Scalar& x : w.reshaped()) {
      const auto v = x.symmetric_i64();
      if (!v || !below(*v, std::size_t(params.t + params.s))) throw ModelError(name + ": weight exceeds 2^(t+s)");
    }
    dim = std::size_t(w.rows());
  }
}

ModelShape ModelSpec::shape() const {
  validate();
  ModelShape out{params, input_dim, {}};
  std::size_t dim = input_dim;
  std::size_t bits = std::size_t(params.t + params.s) + 1;
  for (const Layer& layer : layers) {
    if (const auto* lin = std::get_if<Linear>(&layer)) {
      out.layers.push_back({LayerKind::kLinear, dim, std::size_t(lin->weights.rows()), 0});
      dim = std::size_t(lin->weights.rows());
      bits = relu_bits(params);
    } else {
      out.layers.push_back({LayerKind::kRelu, dim, dim, bits});
    }
  }
  return out;
}

std::size_t model_tau(const ModelShape& shape) {
  std::size_t tau = next_pow2(shape.input_dim);
  for (const LayerShape& l : shape.layers) {
    tau = std::max(tau, l.kind == LayerKind::kLinear ? matmul_tau(linear_dims(l), shape.params)
                                                     : relu_tau(ReluShape{next_pow2(l.in_dim), l.relu_bits}));
  }
  return tau;
}

std::vector<GroupElement> register_model(const GeneratorSet& gens, const ModelSpec& spec) {
  spec.validate();
  std::vector<GroupElement> out;
  for (const Layer& layer : spec.layers) {
    if (const auto* lin = std::get_if<Linear>(&layer)) {
      const ScalarMatrix w = pad_to_pow2(lin->weights);
      if (std::size_t(w.size()) > gens.tau()) throw DimensionError("register_model: generator set too small");
      out.push_back(commit(gens.g, matrix_to_mle(w)));
    }
  }
  return out;
}

ScalarVector reference_inference(const ModelSpec& spec, const ScalarVector& x) {
  const ModelShape shape = spec.shape();
  const FixedPointParams& p = spec.params;
  if (std::size_t(x.size()) != spec.input_dim) throw DimensionError("reference: input has the wrong length");
  if (2 * (p.t + p.s) + 11 + 2 > 126) throw ModelError("reference: (t, s) too wide for 128-bit evaluation");
  std::vector<__int128> act(std::size_t(x.size()));
  for (std::size_t i = 0; i < act.size(); ++i) act[i] = checked_i64(x[Eigen::Index(i)], "input");
  for (std::size_t li = 0; li < spec.layers.size(); ++li) {
    const std::string name = layer_name(li, shape.layers[li].kind);
    if (const auto* lin = std::get_if<Linear>(&spec.layers[li])) {
      if (next_pow2(act.size()) > (std::size_t(1) << 11)) throw ModelError("reference: width above 2048");
      for (__int128 v : act) {
        if (!below(v, std::size_t(p.t + p.s))) throw OverflowError(name + ": input exceeds 2^(t+s)");
      }
      std::vector<__int128> next(std::size_t(lin->weights.rows()));
      for (Eigen::Index r = 0; r < lin->weights.rows(); ++r) {
        __int128 acc = 0;
        for (Eigen::Index c = 0; c < lin->weights.cols(); ++c) {
          acc += __int128(checked_i64(lin->weights(r, c), "weight")) * act[std::size_t(c)];
        }
        // Arithmetic shift is a floor division, so ties round up.
        const __int128 rounded = (acc + (__int128(1) << (p.s - 1))) >> p.s;
        if (!below(rounded, std::size_t(p.t) + 1)) throw OverflowError(name + ": output exceeds 2^(t+1)");
        next[std::size_t(r)] = rounded;
      }
      act = std::move(next);
    } else {
      for (__int128& v : act) {
        if (!below(v, shape.layers[li].relu_bits)) throw OverflowError(name + ": input exceeds the ReLU width");
        v = std::max<__int128>(v, 0);
      }
    }
  }
  ScalarVector y(Eigen::Index(act.size()));
  for (std::size_t i = 0; i < act.size(); ++i) y[Eigen::Index(i)] = Scalar(int64_t(act[i]));
  return y;
}

std::size_t InferenceProof::byte_size() const {
  std::size_t n = 0;
  for (const LayerProof& l : layers) n += layer_proof_bytes(l);
  return n;
}

void InferenceProof::write(ByteWriter& w) const {
  w.point(input_commitment);
  w.point(output_commitment);
  w.u32(uint32_t(layers.size()));
  for (const LayerProof& l : layers) write_layer_proof(w, l);
}

InferenceProof InferenceProof::read(ByteReader& r) {
  InferenceProof p;
  p.input_commitment = r.point();
  p.output_commitment = r.point();
  const std::size_t n = r.count(1);
  p.layers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.layers.push_back(read_layer_proof(r));
  return p;
}

InferenceResult prove_inference(const GeneratorSet& gens, const ModelSpec& spec, const ScalarVector& x, Transcript& tr) {
  const ModelShape shape = spec.shape();
  if (std::size_t(x.size()) != spec.input_dim) throw DimensionError("prove_inference: input has the wrong length");
  if (gens.tau() < model_tau(shape)) throw DimensionError("prove_inference: generator set too small");
  const std::vector<GroupElement> weights = register_model(gens, spec);

  InferenceResult out;
  ScalarMatrix act = as_column(x, next_pow2(spec.input_dim));
  GroupElement act_commit = commit(gens.g, x);
  out.proof.input_commitment = act_commit;
  bind_statement(tr, shape, weights, act_commit);

  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const LayerShape& ls = shape.layers[i];
    try {
      if (const auto* lin = std::get_if<Linear>(&spec.layers[i])) {
        const ScalarMatrix w = pad_to_pow2(lin->weights);
        MatmulRoundResult res = prove_matmul_round(gens, w, act, spec.params, tr);
        act = std::move(res.cp);
        act_commit = res.proof.p_cp;
        out.proof.layers.emplace_back(std::move(res.proof));
      } else {
        ReluResult res = prove_relu(gens, act, act_commit, ls.relu_bits, tr);
        act = std::move(res.b);
        act_commit = res.proof.p_b;
        out.proof.layers.emplace_back(std::move(res.proof));
      }
    } catch (const OverflowError& e) {
      throw OverflowError(layer_name(i, ls.kind) + ": " + e.what());
    }
  }
  out.output = act.col(0).head(Eigen::Index(shape.output_dim()));
  out.proof.output_commitment = act_commit;
  return out;
}

Verdict verify_inference(const GeneratorSet& gens, const ModelShape& shape,
                         const std::vector<GroupElement>& weight_commitments, const ScalarVector& x,
                         const ScalarVector& y, const InferenceProof& proof, Transcript& tr) {
  if (std::size_t(x.size()) != shape.input_dim) return Verdict::reject("input has the wrong length");
  if (std::size_t(y.size()) != shape.output_dim()) return Verdict::reject("output has the wrong length");
  if (weight_commitments.size() != shape.linear_count()) return Verdict::reject("wrong number of weight commitments");
  if (proof.layers.size() != shape.layers.size()) return Verdict::reject("wrong number of layer proofs");
  if (gens.tau() < model_tau(shape)) return Verdict::reject("generator set too small");

  GroupElement current = commit(gens.g, x);
  if (proof.input_commitment != current) return Verdict::reject("input commitment does not match x");
  bind_statement(tr, shape, weight_commitments, current);

  std::size_t linear_index = 0;
  for (std::size_t i = 0; i < shape.layers.size(); ++i) {
    const LayerShape& ls = shape.layers[i];
    const std::string name = layer_name(i, ls.kind);
    if (ls.kind == LayerKind::kLinear) {
      const auto* p = std::get_if<MatmulRoundProof>(&proof.layers[i]);
      if (!p) return Verdict::reject(name + ": expected a matmul proof");
      if (p->p_b != current) return Verdict::reject(name + ": chain break, input commitment differs from the previous output");
      const GroupElement& w = weight_commitments[linear_index++];
      if (p->p_a != w) return Verdict::reject(name + ": weight commitment differs from the registered one");
      const Verdict v = verify_matmul_round(gens, w, current, linear_dims(ls), shape.params, *p, tr);
      if (!v) return v.within(name);
      current = p->p_cp;
    } else {
      const auto* p = std::get_if<ReluProof>(&proof.layers[i]);
      if (!p) return Verdict::reject(name + ": expected a relu proof");
      const Verdict v = verify_relu(gens, current, ReluShape{next_pow2(ls.in_dim), ls.relu_bits}, *p, tr);
      if (!v) return v.within(name);
      current = p->p_b;
    }
  }
  if (proof.output_commitment != current) return Verdict::reject("chain break, output commitment differs from the last layer");
  if (commit(gens.g, y) != current) return Verdict::reject("output commitment does not match y");
  return Verdict::accept();
}

// Fixtures.

ModelSpec seeded_mlp(uint64_t seed, const FixedPointParams& params, const std::vector<std::size_t>& dims,
                     const std::vector<int64_t>& weight_bounds) {
  if (dims.size() < 2 || weight_bounds.size() != dims.size() - 1) throw ModelError("seeded_mlp: bad dims or bounds");
  std::mt19937_64 rng(seed);
  ModelSpec spec{params, dims[0], {}};
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    std::uniform_int_distribution<int64_t> dist(-weight_bounds[i], weight_bounds[i]);
    ScalarMatrix w(Eigen::Index(dims[i + 1]), Eigen::Index(dims[i]));
    for (auto& e : w.reshaped()) e = Scalar(dist(rng));
    spec.layers.emplace_back(Linear{std::move(w)});
    spec.layers.emplace_back(Relu{});
  }
  spec.validate();
  return spec;
}

ScalarVector seeded_input(uint64_t seed, std::size_t dim, int64_t max_entry) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> dist(0, max_entry);
  ScalarVector x(static_cast<Eigen::Index>(dim));
  for (auto& e : x) e = Scalar(dist(rng));
  return x;
}

ModelSpec case_study_model(uint64_t seed) {
  return seeded_mlp(seed, FixedPointParams{8, 6}, {784, 12, 12, 12, 10}, {1, 160, 160, 160});
}

ScalarVector case_study_input(uint64_t seed) { return seeded_input(seed ^ 0x9e3779b97f4a7c15ULL, 784, 255); }

// Files.

std::vector<uint8_t> write_model(const ModelSpec& spec) {
  const ModelShape shape = spec.shape();
  ByteWriter w;
  w.magic("RAML");
  w.u32(kFormatVersion);
  w.i32(spec.params.s);
  w.i32(spec.params.t);
  w.u32(uint32_t(spec.input_dim));
  w.u32(uint32_t(spec.layers.size()));
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    w.u8(uint8_t(shape.layers[i].kind));
    if (const auto* lin = std::get_if<Linear>(&spec.layers[i])) {
      w.u32(uint32_t(lin->weights.rows()));
      w.u32(uint32_t(lin->weights.cols()));
      for (const Scalar& x : lin->weights.reshaped<Eigen::RowMajor>()) w.scalar(x);
    } else {
      w.u32(uint32_t(shape.layers[i].in_dim));
    }
  }
  return w.take();
}

ModelSpec read_model(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_magic("RAML");
  if (r.u32() != kFormatVersion) throw FormatError("model: unsupported version");
  ModelSpec spec;
  spec.params.s = r.i32();
  spec.params.t = r.i32();
  spec.input_dim = r.u32();
  const std::size_t count = r.count(5);
  std::size_t dim = spec.input_dim;
  for (std::size_t i = 0; i < count; ++i) {
    const uint8_t tag = r.u8();
    if (tag == uint8_t(LayerKind::kLinear)) {
      const std::size_t rows = r.u32();
      const std::size_t cols = r.u32();
      if (rows == 0 || cols == 0 || rows * cols > r.remaining() / kScalarBytes) {
        throw FormatError("model: weight matrix larger than the file");
      }
      ScalarMatrix w(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
      for (auto& x : w.reshaped<Eigen::RowMajor>()) x = r.scalar();
      spec.layers.emplace_back(Linear{std::move(w)});
      dim = rows;
    } else if (tag == uint8_t(LayerKind::kRelu)) {
      if (r.u32() != dim) throw FormatError("model: ReLU width does not match the preceding layer");
      spec.layers.emplace_back(Relu{});
    } else {
      throw FormatError("model: unknown layer tag " + std::to_string(tag));
    }
  }
  r.expect_done();
  try {
    spec.validate();
  } catch (const ModelError& e) {
    throw FormatError(e.what());
  }
  return spec;
}

std::vector<uint8_t> write_vector(const ScalarVector& v) {
  ByteWriter w;
  w.magic("RAVC");
  w.u32(uint32_t(v.size()));
  for (const Scalar& x : v) w.scalar(x);
  return w.take();
}

ScalarVector read_vector(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_magic("RAVC");
  ScalarVector v(Eigen::Index(r.count(kScalarBytes)));
  for (auto& x : v) x = r.scalar();
  r.expect_done();
  return v;
}

Transcript ProofFile::transcript() const {
  return mode == TranscriptMode::kFiatShamir ? Transcript::fiat_shamir(kInferenceDomain) : Transcript::interactive(seed);
}

std::vector<uint8_t> write_proof_file(const ProofFile& file) {
  ByteWriter w;
  w.magic("RAPF");
  w.u8(uint8_t(file.mode));
  if (file.mode == TranscriptMode::kInteractive) w.bytes(file.seed);
  file.proof.write(w);
  return w.take();
}

ProofFile read_proof_file(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_magic("RAPF");
  ProofFile file;
  const uint8_t mode = r.u8();
  if (mode == uint8_t(TranscriptMode::kInteractive)) {
    file.mode = TranscriptMode::kInteractive;
    const auto s = r.bytes(file.seed.size());
    std::copy(s.begin(), s.end(), file.seed.begin());
  } else if (mode != uint8_t(TranscriptMode::kFiatShamir)) {
    throw FormatError("proof: unknown transcript mode");
  }
  file.proof = InferenceProof::read(r);
  r.expect_done();
  return file;
}

std::vector<uint8_t> write_commitments(const std::vector<GroupElement>& commitments) {
  ByteWriter w;
  w.magic("RACM");
  w.u32(uint32_t(commitments.size()));
  for (const GroupElement& c : commitments) w.point(c);
  return w.take();
}

std::vector<GroupElement> read_commitments(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_magic("RACM");
  std::vector<GroupElement> out(r.count(kPointBytes));
  for (auto& c : out) c = r.point();
  r.expect_done();
  return out;
}

std::vector<uint8_t> write_generators(const GeneratorSet& gens) {
  ByteWriter w;
  w.magic("RAGN");
  w.blob(gens.seed);
  w.u64(gens.tau());
  for (const AffinePoint& p : gens.g) w.point(GroupElement::from_affine(p));
  for (const AffinePoint& p : gens.h) w.point(GroupElement::from_affine(p));
  w.point(GroupElement::from_affine(gens.u));
  return w.take();
}

GeneratorSet read_generators(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  r.expect_magic("RAGN");
  const auto seed = r.blob();
  const uint64_t tau = r.u64();
  if (tau == 0 || tau > r.remaining() / (2 * kPointBytes)) throw FormatError("generators: bad tau");
  GeneratorSet gens = derive_generators(seed, std::size_t(tau));
  auto expect = [&](const AffinePoint& p) {
    if (r.point() != GroupElement::from_affine(p)) throw FormatError("generators: points do not match the seed");
  };
  for (const AffinePoint& p : gens.g) expect(p);
  for (const AffinePoint& p : gens.h) expect(p);
  expect(gens.u);
  r.expect_done();
  return gens;
}

}  // namespace ra
