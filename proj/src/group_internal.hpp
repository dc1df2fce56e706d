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

#include <array>
#include <cstdint>
#include <vector>

#include "ra/group.hpp"

namespace ra::detail {

/// Width-w non-adjacent form of a non-negative integer below 2^256, least
/// significant digit first.
std::vector<int8_t> wnaf(const Limbs& k, int w);

/// p, 3p, 5p, ..., (2^{w-1} - 1)p.
std::vector<GroupElement> odd_multiples(const GroupElement& p, int w);

/// (n - 1) / 2 for the group order n.
const Limbs& half_order();

}  // namespace ra::detail
