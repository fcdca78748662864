/*
 * Copyright 2026 The sempir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sempir {

// Set of canonical (0-based) message indices.
using SubsetMask = std::uint32_t;

inline constexpr std::size_t kMaxMessages = 16;

inline std::size_t subset_size(SubsetMask s) { return static_cast<std::size_t>(std::popcount(s)); }
inline bool subset_contains(SubsetMask s, std::size_t i) { return (s >> i) & 1u; }
inline SubsetMask singleton(std::size_t i) { return SubsetMask{1} << i; }

std::vector<std::size_t> subset_members(SubsetMask s);

// All nonempty subsets of {0..k-1}, ordered by size and then lexicographically
// by their sorted member lists.
std::vector<SubsetMask> ordered_subsets(std::size_t k);

// Renders "W1~W3" using `label` to map canonical indices to display indices.
std::string subset_label(SubsetMask s, const std::function<std::size_t(std::size_t)>& label);

}  // namespace sempir
