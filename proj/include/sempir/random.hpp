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

#include <cstdint>
#include <random>
#include <string_view>

#include "sempir/gf.hpp"

namespace sempir {

// Seeded generator with platform-independent bounded draws
// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound);

  gf::Element element(const gf::Field& f) { return gf::Element(static_cast<std::uint32_t>(uniform(f.modulus()))); }
  gf::Element nonzero(const gf::Field& f) {
    return gf::Element(static_cast<std::uint32_t>(1 + uniform(f.modulus() - 1)));
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Independent child seed for a named purpose and index.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index);

}  // namespace sempir
