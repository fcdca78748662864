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

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "sempir/gf.hpp"

namespace sempir::mds {

struct KnownSymbol {
  std::size_t position;
  gf::Element value;
};

// Systematic n x k generator [I_k ; C] with C an (n-k) x k Cauchy matrix.
// Acts on the left of an information k-vector; every k-row submatrix is
// invertible.
class MdsGenerator {
 public:
  std::size_t length() const noexcept { return g_.rows(); }
  std::size_t dimension() const noexcept { return g_.cols(); }
  const gf::Field& field() const noexcept { return field_; }
  const gf::Matrix& matrix() const noexcept { return g_; }
  std::span<const gf::Element> row(std::size_t i) const noexcept { return g_.row(i); }

 private:
  MdsGenerator(gf::Field f, gf::Matrix g) : field_(f), g_(std::move(g)) {}
  friend MdsGenerator build_mds(std::size_t n, std::size_t k, const gf::Field& field);

  gf::Field field_;
  gf::Matrix g_;
};

// Deterministic in (n, k, p). Cauchy points are x_r = r for parity rows and
// y_c = n + c for information columns, so p >= 2n keeps them distinct.
MdsGenerator build_mds(std::size_t n, std::size_t k, const gf::Field& field);

std::vector<gf::Element> encode(const MdsGenerator& gen, std::span<const gf::Element> info);

// Recovers the unique codeword agreeing with the known coordinates. Solves
// from the k lowest known positions and verifies every surplus coordinate.
std::vector<gf::Element> complete_codeword(const MdsGenerator& gen, std::span<const KnownSymbol> known);

// Hands out one shared generator per (n, k) so every user of a code shape
// sees the same code.
class GeneratorCache {
 public:
  explicit GeneratorCache(gf::Field field) : field_(field) {}

  std::shared_ptr<const MdsGenerator> get(std::size_t n, std::size_t k);

 private:
  gf::Field field_;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const MdsGenerator>> codes_;
};

}  // namespace sempir::mds
