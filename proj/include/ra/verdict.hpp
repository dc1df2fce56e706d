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

#include <string>
#include <utility>

namespace ra {

/// Outcome of a verification: accepted, or rejected with the first failing
/// check named in `reason`.
class Verdict {
 public:
  static Verdict accept() { return Verdict(true, {}); }
  static Verdict reject(std::string reason) { return Verdict(false, std::move(reason)); }

  bool accepted() const { return accepted_; }
  const std::string& reason() const { return reason_; }
  explicit operator bool() const { return accepted_; }

  /// Prefixes the reason of a rejection with the enclosing step.
  Verdict within(const std::string& step) const {
    return accepted_ ? *this : reject(step + ": " + reason_);
  }

 private:
  Verdict(bool ok, std::string reason) : accepted_(ok), reason_(std::move(reason)) {}

  bool accepted_;
  std::string reason_;
};

}  // namespace ra
