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

#include <array>
#include <vector>

#include "sempir/error.hpp"
#include "sempir/params.hpp"
#include "sempir/runtime.hpp"

using namespace sempir;
using namespace sempir::runtime;

namespace {

params::ProblemSpec example1() { return params::ProblemSpec(4, 3, {192, 128, 64}); }

scheme::ServerQuery one_slot(std::vector<std::uint64_t> u, std::vector<scheme::Term> terms, std::uint64_t iteration = 0) {
  scheme::ServerQuery q;
  q.block_sizes = std::move(u);
  q.iteration = iteration;
  SubsetMask m = 0;
  for (const auto& t : terms) m |= singleton(t.message);
  q.slots.push_back({m, std::move(terms)});
  return q;
}

std::vector<gf::Element> elems(std::initializer_list<std::uint32_t> v) {
  std::vector<gf::Element> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("message generation") {
  auto spec = params::ProblemSpec(3, 1, {10, 7, 3}, {}, gf::Field(11));
  auto a = generate_messages(spec, 5);
  auto b = generate_messages(spec, 5);
  auto c = generate_messages(spec, 6);
  CHECK(a.messages == b.messages);
  CHECK(a.messages != c.messages);
  REQUIRE(a.messages.size() == 3);
  CHECK(a.messages[0].size() == 10);
  CHECK(a.messages[1].size() == 7);
  CHECK(a.messages[2].size() == 3);
  for (const auto& w : a.messages) {
    for (auto e : w) CHECK(e.value < 11);
  }
  CHECK(message_seed(1) != message_seed(2));
}

TEST_CASE("generated symbols are uniform") {
  auto spec = params::ProblemSpec(2, 1, {100000}, {}, gf::Field(7));
  auto store = generate_messages(spec, 42);
  std::array<double, 7> counts{};
  for (auto e : store.messages[0]) counts[e.value] += 1;
  const double expect = 100000.0 / 7;
  double stat = 0;
  for (double c : counts) stat += (c - expect) * (c - expect) / expect;
  CHECK(stat < 22.458);  // chi-square, 6 dof, alpha 0.001
}

TEST_CASE("answers are linear combinations") {
  gf::Field f(13);
  MessageStore store{f, {elems({1, 2, 3, 4}), elems({5, 6})}};
  CHECK(answer_query(store, one_slot({2, 1}, {{0, elems({1, 0})}})) == elems({1}));
  CHECK(answer_query(store, one_slot({2, 1}, {{0, elems({0, 1})}}, 1)) == elems({4}));
  CHECK(answer_query(store, one_slot({2, 1}, {{1, elems({1})}}, 1)) == elems({6}));
  // a + b + c over GF(13): 3*1 + 4*2 + 2*5 = 21 = 8
  gf::Field g(13);
  MessageStore three{g, {elems({1}), elems({2}), elems({5})}};
  auto q = one_slot({1, 1, 1}, {{0, elems({3})}, {1, elems({4})}, {2, elems({2})}});
  CHECK(answer_query(three, q) == elems({8}));

  CHECK_THROWS_AS(answer_query(store, one_slot({2}, {{0, elems({1, 0})}})), DimensionMismatch);
  CHECK_THROWS_AS(answer_query(store, one_slot({2, 1}, {{0, elems({1, 0, 0})}})), DimensionMismatch);
  CHECK_THROWS_AS(answer_query(store, one_slot({2, 1}, {{0, elems({1, 0})}}, 2)), DimensionMismatch);
}

TEST_CASE("example 1 sessions recover every message") {
  auto spec = example1();
  for (std::size_t theta = 0; theta < 3; ++theta) {
    auto t = run_session(spec, theta, 11 + theta);
    CHECK(t.downloads == 324);
    CHECK(t.recovered.symbols.size() == spec.lengths()[theta]);
    CHECK(t.rate == Rational(spec.lengths()[theta], 324));
    REQUIRE(t.iterations.size() == 1);
    CHECK(t.iterations[0].answers.size() == 4);
    for (const auto& a : t.iterations[0].answers) CHECK(a.size() == 81);
    CHECK(t.recovered.symbols == generate_messages(spec, message_seed(11 + theta)).messages[theta]);
  }
}

TEST_CASE("replays are deterministic") {
  auto spec = params::ProblemSpec(3, 2, {9, 9}, {}, gf::Field(19));
  auto a = run_session(spec, 1, 2024);
  auto b = run_session(spec, 1, 2024);
  CHECK(a.iterations[0].answers == b.iterations[0].answers);
  CHECK(a.iterations[0].queries.servers[2].slots[0].terms[0].coefficients ==
        b.iterations[0].queries.servers[2].slots[0].terms[0].coefficients);
  auto c = run_session(spec, 1, 2025);
  CHECK(a.iterations[0].answers != c.iterations[0].answers);
  CHECK(a.downloads == 15);
}

TEST_CASE("single message runs at rate one") {
  for (std::uint32_t n = 2; n <= 5; ++n) {
    for (std::uint32_t t = 1; t < n; ++t) {
      auto spec = params::ProblemSpec(n, t, {std::uint64_t{12} * n});
      auto tr = run_session(spec, 0, n * 10 + t);
      CHECK(tr.rate == Rational(1));
    }
  }
}

TEST_CASE("multi-iteration sessions") {
  // alpha > 1: lengths 18, 18 over N=3, T=2 give two iterations of U=9.
  auto spec = params::ProblemSpec(3, 2, {18, 18}, {}, gf::Field(19));
  auto plan = params::compute_plan(spec);
  REQUIRE(plan.repetitions == 2);
  auto tr = run_session(spec, 0, 3);
  CHECK(tr.iterations.size() == 2);
  CHECK(tr.downloads == 30);
  CHECK(tr.recovered.indices[1].front() == 9);
  auto light = run_session(spec, 0, 3, {{}, false});
  CHECK(light.iterations[0].queries.servers.empty());
  CHECK(light.recovered.symbols == tr.recovered.symbols);
}

TEST_CASE("collusion views") {
  auto spec = example1();
  auto t = run_session(spec, 0, 8);
  std::vector<std::uint32_t> who{0, 2, 3};
  auto view = collude_view(t, who);
  REQUIRE(view.size() == 1);
  CHECK(view[0].size() == 3 * 81);
  std::vector<std::uint32_t> two{0, 1};
  CHECK_THROWS_AS(collude_view(t, two), InvalidSpec);
  std::vector<std::uint32_t> dup{0, 0, 1};
  CHECK_THROWS_AS(collude_view(t, dup), InvalidSpec);
  std::vector<std::uint32_t> far{0, 1, 4};
  CHECK_THROWS_AS(collude_view(t, far), InvalidSpec);
  CHECK_THROWS_AS(run_session(spec, 3, 1), InvalidSpec);
}

TEST_CASE("example 2 session for the shortest message") {
  auto spec = params::ProblemSpec(8, 2, {16384, 12288, 8192, 4096});
  auto t = run_session(spec, 3, 4, {{}, false});
  CHECK(t.downloads == 2504 * 8);
  CHECK(t.rate == Rational(4096, 20032));
}
