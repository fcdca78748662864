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

#include "sempir/mds.hpp"

#include <algorithm>
#include <string>

#include "sempir/error.hpp"

namespace sempir::mds {

MdsGenerator build_mds(std::size_t n, std::size_t k, const gf::Field& field) {
  if (k == 0 || k > n) {
    throw InvalidSpec("MDS code needs 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  // Cauchy points 0..n-k-1 and n..n+k-1 must stay distinct mod p.
  if (n > k && std::uint64_t{n} + k > field.modulus()) {
    throw FieldTooSmall("field modulus " + std::to_string(field.modulus()) + " too small for a [" + std::to_string(n) +
                        "," + std::to_string(k) + "] Cauchy code (need p >= n + k)");
  }
  gf::Matrix g(n, k);
  for (std::size_t i = 0; i < k; ++i) g(i, i) = gf::Element(1);
  for (std::size_t r = 0; r < n - k; ++r) {
    const gf::Element x = field.element(r);
    for (std::size_t c = 0; c < k; ++c) {
      const gf::Element y = field.element(n + c);
      g(k + r, c) = field.inv(field.sub(x, y));
    }
  }
  return MdsGenerator(field, std::move(g));
}

std::vector<gf::Element> encode(const MdsGenerator& gen, std::span<const gf::Element> info) {
  if (info.size() != gen.dimension()) {
    throw DimensionMismatch("encode: info length " + std::to_string(info.size()) + " != k " +
                            std::to_string(gen.dimension()));
  }
  return gf::multiply(gen.field(), gen.matrix(), info);
}

std::vector<gf::Element> complete_codeword(const MdsGenerator& gen, std::span<const KnownSymbol> known) {
  const std::size_t n = gen.length();
  const std::size_t k = gen.dimension();
  if (known.size() < k) {
    throw InsufficientData("codeword completion needs " + std::to_string(k) + " coordinates, got " +
                           std::to_string(known.size()));
  }
  std::vector<KnownSymbol> sorted(known.begin(), known.end());
  std::ranges::sort(sorted, {}, &KnownSymbol::position);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].position >= n) throw DimensionMismatch("known position outside codeword");
    if (i > 0 && sorted[i].position == sorted[i - 1].position) {
      throw InvalidSpec("duplicate known position " + std::to_string(sorted[i].position));
    }
  }

  std::vector<gf::Element> info(k);
  if (sorted[k - 1].position == k - 1) {
    // Systematic prefix: the information word is read off directly.
    for (std::size_t i = 0; i < k; ++i) info[i] = sorted[i].value;
  } else {
    std::vector<std::size_t> rows(k);
    std::vector<gf::Element> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      rows[i] = sorted[i].position;
      rhs[i] = sorted[i].value;
    }
    info = gf::solve(gen.field(), gen.matrix().select_rows(rows), rhs);
  }

  std::vector<gf::Element> codeword = encode(gen, info);
  for (std::size_t i = k; i < sorted.size(); ++i) {
    if (codeword[sorted[i].position] != sorted[i].value) {
      throw IntegrityError("known coordinate " + std::to_string(sorted[i].position) +
                           " inconsistent with the recovered codeword");
    }
  }
  return codeword;
}

std::shared_ptr<const MdsGenerator> GeneratorCache::get(std::size_t n, std::size_t k) {
  std::lock_guard lock(mutex_);
  auto& slot = codes_[{n, k}];
  if (!slot) slot = std::make_shared<const MdsGenerator>(build_mds(n, k, field_));
  return slot;
}

}  // namespace sempir::mds
