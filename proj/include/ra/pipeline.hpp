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
#include <string>
#include <variant>
#include <vector>

#include "ra/field.hpp"
#include "ra/fixed_point.hpp"
#include "ra/group.hpp"
#include "ra/layerproto.hpp"
#include "ra/transcript.hpp"
#include "ra/verdict.hpp"
#include "ra/wire.hpp"

namespace ra {

// Inference over a chain of fixed-point layers on a single input vector.
// Activations are column vectors zero-padded to powers of two; each layer's
// output commitment is the next layer's input commitment.

/// y = round(W x) with W of shape d_out x d_in. A bias can be folded in by
/// appending a constant input coordinate.
struct Linear {
  ScalarMatrix weights;
};

/// y = max(x, 0).
struct Relu {};

using Layer = std::variant<Linear, Relu>;

enum class LayerKind : uint8_t { kLinear = 1, kRelu = 2 };

/// Public shape of one layer, as seen by the verifier.
struct LayerShape {
  LayerKind kind = LayerKind::kLinear;
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::size_t relu_bits = 0;  // ReLU only

  friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

struct ModelShape {
  FixedPointParams params;
  std::size_t input_dim = 0;
  std::vector<LayerShape> layers;

  std::size_t output_dim() const { return layers.empty() ? input_dim : layers.back().out_dim; }
  std::size_t linear_count() const;
  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ModelSpec {
  FixedPointParams params;
  std::size_t input_dim = 0;
  std::vector<Layer> layers;

  /// Throws ModelError on inconsistent dims or weights outside 2^{t+s}.
  void validate() const;
  /// A ReLU after a Linear layer carries t + 2 bits; a leading ReLU carries
  /// t + s + 1; a ReLU after a ReLU inherits its width.
  ModelShape shape() const;
};

/// Generators a model needs.
std::size_t model_tau(const ModelShape& shape);

/// Commitments to each padded weight matrix, in layer order.
std::vector<GroupElement> register_model(const GeneratorSet& gens, const ModelSpec& spec);

/// Plain fixed-point evaluation with 64-bit integers and no proofs. Throws
/// OverflowError when a value leaves the range the protocols carry.
ScalarVector reference_inference(const ModelSpec& spec, const ScalarVector& x);

struct InferenceProof {
  GroupElement input_commitment;
  GroupElement output_commitment;
  std::vector<LayerProof> layers;

  std::size_t byte_size() const;
  void write(ByteWriter& w) const;
  static InferenceProof read(ByteReader& r);
};

struct InferenceResult {
  ScalarVector output;  // unpadded, output_dim entries
  InferenceProof proof;
};

/// Throws OverflowError naming the layer when a value leaves the carried range.
InferenceResult prove_inference(const GeneratorSet& gens, const ModelSpec& spec, const ScalarVector& x, Transcript& tr);

/// Recomputes commit(x) and commit(y), checks the commitment chain and
/// verifies every layer in order.
Verdict verify_inference(const GeneratorSet& gens, const ModelShape& shape,
                         const std::vector<GroupElement>& weight_commitments, const ScalarVector& x,
                         const ScalarVector& y, const InferenceProof& proof, Transcript& tr);

// Fixtures.

/// Weights uniform in [-bound_i, bound_i] for layer i, a ReLU after every
/// Linear layer; dims = {d_0, d_1, ..., d_L}.
ModelSpec seeded_mlp(uint64_t seed, const FixedPointParams& params, const std::vector<std::size_t>& dims,
                     const std::vector<int64_t>& weight_bounds);

/// Entries uniform in [0, max_entry].
ScalarVector seeded_input(uint64_t seed, std::size_t dim, int64_t max_entry);

/// 784 -> 12 -> 12 -> 12 -> 10, s = 8, t = 6, weight bounds {1, 160, 160, 160}
/// (real magnitudes up to 1/256 and 5/8), about 10^4 parameters.
ModelSpec case_study_model(uint64_t seed = 1);
/// 784 entries in [0, 255], a pixel intensity in [0, 1).
ScalarVector case_study_input(uint64_t seed = 1);

// Files. Scalars use the canonical 32-byte encoding, integers little endian.

/// "RAML", u32 version, i32 s, i32 t, u32 input dim, u32 layer count, then
/// per layer a tag byte with u32 dims (rows, cols for Linear; width for ReLU)
/// and row-major weights.
std::vector<uint8_t> write_model(const ModelSpec& spec);
ModelSpec read_model(std::span<const uint8_t> bytes);

/// "RAVC", u32 length, scalars.
std::vector<uint8_t> write_vector(const ScalarVector& v);
ScalarVector read_vector(std::span<const uint8_t> bytes);

/// "RAPF", transcript-mode tag (plus the 32-byte seed in interactive mode),
/// then the inference proof.
struct ProofFile {
  TranscriptMode mode = TranscriptMode::kFiatShamir;
  Transcript::Seed seed{};
  InferenceProof proof;

  /// A fresh transcript matching the recorded mode.
  Transcript transcript() const;
};
std::vector<uint8_t> write_proof_file(const ProofFile& file);
ProofFile read_proof_file(std::span<const uint8_t> bytes);

/// "RACM", u32 count, points.
std::vector<uint8_t> write_commitments(const std::vector<GroupElement>& commitments);
std::vector<GroupElement> read_commitments(std::span<const uint8_t> bytes);

/// "RAGN", seed blob, u64 tau, then g, h and u as compressed points.
std::vector<uint8_t> write_generators(const GeneratorSet& gens);
/// Throws FormatError if the points differ from those derived from the seed.
GeneratorSet read_generators(std::span<const uint8_t> bytes);

/// Domain string of the inference transcript.
inline constexpr const char* kInferenceDomain = "rangearith/inference/v1";

}  // namespace ra
