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

#include "sempir/subset.hpp"

#include <algorithm>

namespace sempir {

std::vector<std::size_t> subset_members(SubsetMask s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1) {
    if (s & 1u) out.push_back(i);
  }
  return out;
}

std::vector<SubsetMask> ordered_subsets(std::size_t k) {
  std::vector<SubsetMask> out;
  for (std::size_t size = 1; size <= k; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      SubsetMask m = 0;
      for (auto i : pick) m |= singleton(i);
      out.push_back(m);
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == k - size + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

std::string subset_label(SubsetMask s, const std::function<std::size_t(std::size_t)>& label) {
  std::vector<std::size_t> shown;
  for (auto i : subset_members(s)) shown.push_back(label(i));
  std::ranges::sort(shown);
  std::string out;
  for (auto i : shown) {
    if (!out.empty()) out += "~";
    out += "W" + std::to_string(i + 1);
  }
  return out;
}

}  // namespace sempir
