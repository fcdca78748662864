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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "sempir/error.hpp"
#include "sempir/mds.hpp"
#include "sempir/random.hpp"

using namespace sempir;
using gf::Element;
using gf::Field;

namespace {

// Calls fn(rows) for every k-subset of {0..n-1}.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Element> random_vector(const Field& f, Rng& rng, std::size_t n) {
  std::vector<Element> v(n);
  for (auto& e : v) e = rng.element(f);
  return v;
}

}  // namespace

TEST_CASE("square code is the identity") {
  Field f(65537);
  auto g = mds::build_mds(4, 4, f);
  CHECK(g.matrix() == gf::Matrix::identity(4));
}

TEST_CASE("[3,2] code over GF(5)") {
  Field f(5);
  auto g = mds::build_mds(3, 2, f);
  // Parity row 1/(0-3), 1/(0-4) = 3, 1 mod 5.
  CHECK(g.row(2)[0] == Element(3));
  CHECK(g.row(2)[1] == Element(1));
  for_each_subset(3, 2, [&](const std::vector<std::size_t>& rows) {
    CHECK(gf::rank(f, g.matrix().select_rows(rows)) == 2);
  });
  std::vector<Element> info{Element(1), Element(0)};
  CHECK(mds::encode(g, info) == std::vector<Element>{Element(1), Element(0), Element(3)});

  // Completion from the last two positions, against all 25 codewords.
  for (std::uint32_t a = 0; a < 5; ++a) {
    for (std::uint32_t b = 0; b < 5; ++b) {
      std::vector<Element> x{Element(a), Element(b)};
      auto cw = mds::encode(g, x);
      std::vector<mds::KnownSymbol> known{{1, cw[1]}, {2, cw[2]}};
      CHECK(mds::complete_codeword(g, known) == cw);
    }
  }
}

TEST_CASE("argument and field checks") {
  Field f(65537);
  CHECK_THROWS_AS(mds::build_mds(3, 4, f), InvalidSpec);
  CHECK_THROWS_AS(mds::build_mds(3, 0, f), InvalidSpec);
  CHECK_THROWS_AS(mds::build_mds(9, 6, Field(13)), FieldTooSmall);
  CHECK_NOTHROW(mds::build_mds(9, 6, Field(17)));
  auto g = mds::build_mds(5, 3, f);
  CHECK_THROWS_AS(mds::encode(g, std::vector<Element>(2)), DimensionMismatch);
}

TEST_CASE("exhaustive MDS property for n <= 12") {
  for (std::uint32_t p : {29u, 65537u}) {
    Field f(p);
    for (std::size_t n = 1; n <= 12; ++n) {
      for (std::size_t k = 1; k <= n; ++k) {
        auto g = mds::build_mds(n, k, f);
        std::size_t failures = 0;
        for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
          if (gf::rank(f, g.matrix().select_rows(rows)) != k) ++failures;
        });
        CHECK_MESSAGE(failures == 0, "n=" << n << " k=" << k << " p=" << p);
      }
    }
  }
}

TEST_CASE("random submatrices of large codes") {
  Field f(65537);
  Rng rng(2024);
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{112, 84}, {160, 148}, {48, 36}, {32, 28}, {16, 12}}) {
    auto g = mds::build_mds(n, k, f);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    int failures = 0;
    for (int t = 0; t < 100; ++t) {
      for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.uniform(n - i)]);
      std::vector<std::size_t> rows(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
      if (gf::rank(f, g.matrix().select_rows(rows)) != k) ++failures;
    }
    CHECK_MESSAGE(failures == 0, n << "x" << k);
  }
}

TEST_CASE("encode and complete are dual") {
  Field f(65537);
  Rng rng(5);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      auto g = mds::build_mds(n, k, f);
      auto cw = mds::encode(g, random_vector(f, rng, k));
      for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
        std::vector<mds::KnownSymbol> known;
        for (auto r : rows) known.push_back({r, cw[r]});
        CHECK(mds::complete_codeword(g, known) == cw);
      });
    }
  }
}

TEST_CASE("systematic prefix, idempotence and shuffled input") {
  Field f(65537);
  Rng rng(11);
  auto g = mds::build_mds(10, 6, f);
  auto info = random_vector(f, rng, 6);
  auto cw = mds::encode(g, info);
  CHECK(std::equal(info.begin(), info.end(), cw.begin()));

  std::vector<mds::KnownSymbol> all;
  for (std::size_t i = 0; i < 10; ++i) all.push_back({9 - i, cw[9 - i]});
  CHECK(mds::complete_codeword(g, all) == cw);

  std::vector<mds::KnownSymbol> prefix;
  for (std::size_t i = 0; i < 6; ++i) prefix.push_back({i, cw[i]});
  CHECK(mds::complete_codeword(g, prefix) == cw);

  CHECK(mds::encode(g, std::vector<Element>(6)) == std::vector<Element>(10));
}

TEST_CASE("completion errors") {
  Field f(65537);
  auto g = mds::build_mds(6, 3, f);
  auto cw = mds::encode(g, std::vector<Element>{Element(1), Element(2), Element(3)});
  std::vector<mds::KnownSymbol> two{{0, cw[0]}, {4, cw[4]}};
  CHECK_THROWS_AS(mds::complete_codeword(g, two), InsufficientData);

  std::vector<mds::KnownSymbol> bad{{1, cw[1]}, {3, cw[3]}, {4, cw[4]}, {5, f.add(cw[5], Element(1))}};
  CHECK_THROWS_AS(mds::complete_codeword(g, bad), IntegrityError);

  std::vector<mds::KnownSymbol> dup{{1, cw[1]}, {1, cw[1]}, {4, cw[4]}};
  CHECK_THROWS_AS(mds::complete_codeword(g, dup), InvalidSpec);

  std::vector<mds::KnownSymbol> out_of_range{{1, cw[1]}, {2, cw[2]}, {6, Element(0)}};
  CHECK_THROWS_AS(mds::complete_codeword(g, out_of_range), DimensionMismatch);
}

TEST_CASE("construction is deterministic and cached") {
  Field f(65537);
  CHECK(mds::build_mds(40, 25, f).matrix() == mds::build_mds(40, 25, f).matrix());
  mds::GeneratorCache cache(f);
  auto a = cache.get(12, 7);
  auto b = cache.get(12, 7);
  CHECK(a.get() == b.get());
  CHECK(a->matrix() == mds::build_mds(12, 7, f).matrix());
}
