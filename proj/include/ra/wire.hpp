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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ra/field.hpp"
#include "ra/group.hpp"

namespace ra {

/// Malformed or truncated serialized data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kScalarBytes = Scalar::kBytes;
constexpr std::size_t kPointBytes = GroupElement::kEncodedSize;

class ByteWriter {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
  }
  void i32(int32_t v) { u32(uint32_t(v)); }
  void bytes(std::span<const uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void magic(std::string_view m) { buf_.insert(buf_.end(), m.begin(), m.end()); }
  /// u32 length prefix followed by the bytes.
  void blob(std::span<const uint8_t> b) {
    u32(uint32_t(b.size()));
    bytes(b);
  }
  void str(std::string_view s) { blob(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size())); }
  void scalar(const Scalar& s) {
    const auto e = s.to_bytes();
    bytes(e);
  }
  void point(const GroupElement& p) {
    const auto e = p.to_bytes();
    bytes(e);
  }

  const std::vector<uint8_t>& data() const { return buf_; }
  std::vector<uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t u8() { return take(1)[0]; }
  uint32_t u32() {
    auto b = take(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(b[std::size_t(i)]) << (8 * i);
    return v;
  }
  uint64_t u64() {
    auto b = take(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(b[std::size_t(i)]) << (8 * i);
    return v;
  }
  int32_t i32() { return int32_t(u32()); }
  std::span<const uint8_t> bytes(std::size_t n) { return take(n); }
  std::span<const uint8_t> blob() { return take(u32()); }
  std::string str() {
    auto b = blob();
    return std::string(b.begin(), b.end());
  }
  void expect_magic(std::string_view m) {
    auto b = take(m.size());
    if (!std::equal(b.begin(), b.end(), m.begin())) throw FormatError("bad magic, expected " + std::string(m));
  }
  Scalar scalar() {
    try {
      return Scalar::from_bytes(take(kScalarBytes));
    } catch (const FieldError& e) {
      throw FormatError(e.what());
    }
  }
  GroupElement point() {
    try {
      return GroupElement::from_bytes(take(kPointBytes));
    } catch (const GroupError& e) {
      throw FormatError(e.what());
    }
  }
  /// A count bounded by what the remaining input could possibly hold.
  std::size_t count(std::size_t min_item_bytes) {
    const uint32_t n = u32();
    if (min_item_bytes > 0 && std::size_t(n) > remaining() / min_item_bytes) throw FormatError("count exceeds input size");
    return n;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  void expect_done() const {
    if (!done()) throw FormatError("trailing bytes");
  }

 private:
  std::span<const uint8_t> take(std::size_t n) {
    if (n > remaining()) throw FormatError("truncated input");
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::span<const uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace ra
