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

#include "sempir/runtime.hpp"

#include <algorithm>
#include <string>

#include "sempir/decode.hpp"
#include "sempir/error.hpp"
#include "sempir/mds.hpp"
#include "sempir/random.hpp"

namespace sempir::runtime {

MessageStore generate_messages(const params::ProblemSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  MessageStore store{spec.field(), {}};
  for (std::uint64_t len : spec.lengths()) {
    std::vector<gf::Element> w(len);
    for (auto& e : w) e = rng.element(spec.field());
    store.messages.push_back(std::move(w));
  }
  return store;
}

std::vector<gf::Element> answer_query(const MessageStore& store, const scheme::ServerQuery& query) {
  if (query.block_sizes.size() != store.messages.size()) {
    throw DimensionMismatch("query addresses " + std::to_string(query.block_sizes.size()) + " messages, store holds " +
                            std::to_string(store.messages.size()));
  }
  const gf::Field& f = store.field;
  std::vector<gf::Element> answers;
  answers.reserve(query.slots.size());
  for (const auto& slot : query.slots) {
    gf::Element acc;
    for (const auto& term : slot.terms) {
      if (term.message >= store.messages.size()) throw DimensionMismatch("slot names an unknown message");
      const std::uint64_t u = query.block_sizes[term.message];
      const auto& w = store.messages[term.message];
      if (term.coefficients.size() != u || (query.iteration + 1) * u > w.size()) {
        throw DimensionMismatch("coefficient row does not fit message " + std::to_string(term.message + 1));
      }
      std::span<const gf::Element> block(w.data() + query.iteration * u, u);
      acc = f.add(acc, gf::dot(f, term.coefficients, block));
    }
    answers.push_back(acc);
  }
  return answers;
}

std::uint64_t message_seed(std::uint64_t seed) { return derive_seed(seed, "messages", 0); }

scheme::SessionSecrets session_secrets(const params::SubpacketPlan& plan, std::size_t theta, std::uint64_t seed,
                                       std::uint64_t iteration, const scheme::BuildOptions& options) {
  return scheme::draw_scramblers(plan, theta, derive_seed(seed, "scramblers", iteration), options);
}

Transcript run_session(const params::ProblemSpec& spec, std::size_t theta, std::uint64_t seed,
                       const SessionOptions& options) {
  if (theta >= spec.messages()) throw InvalidSpec("theta out of range");
  Transcript t{spec, params::compute_plan(spec), theta, seed, {}, {}, {}, 0, 0};
  const auto& plan = t.plan;
  mds::GeneratorCache cache(plan.field);
  scheme::Layout layout = scheme::build_layout(plan, theta, cache, options.build);
  t.script = layout.script;

  MessageStore store = generate_messages(spec, message_seed(seed));
  t.recovered.theta = theta;
  const std::uint64_t u = plan.block_sizes[theta];
  for (std::uint64_t a = 0; a < plan.repetitions; ++a) {
    scheme::SessionSecrets secrets = session_secrets(plan, theta, seed, a, options.build);
    auto built = scheme::build_queries(plan, theta, a, secrets, layout.ledger, layout.allocation);
    IterationRecord rec;
    for (const auto& q : built.queries.servers) {
      rec.answers.push_back(answer_query(store, q));
      t.downloads += rec.answers.back().size();
    }
    auto block = decode::recover_iteration(t.script, rec.answers, layout.allocation, secrets, plan.field);
    std::vector<std::uint64_t> idx(u);
    for (std::uint64_t r = 0; r < u; ++r) idx[r] = a * u + r;
    t.recovered.symbols.insert(t.recovered.symbols.end(), block.begin(), block.end());
    t.recovered.indices.push_back(std::move(idx));
    if (options.keep_queries) rec.queries = std::move(built.queries);
    t.iterations.push_back(std::move(rec));
  }
  if (t.recovered.symbols != store.messages[theta]) {
    throw IntegrityError("recovered message differs from the stored message");
  }
  t.rate = Rational(spec.lengths()[theta], t.downloads);
  return t;
}

std::vector<scheme::Slot> collude_view(const scheme::QuerySet& queries, std::span<const std::uint32_t> colluders,
                                       std::uint32_t collusion) {
  if (colluders.size() != collusion) {
    throw InvalidSpec("colluding set has " + std::to_string(colluders.size()) + " servers, expected " +
                      std::to_string(collusion));
  }
  std::vector<std::uint32_t> sorted(colluders.begin(), colluders.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidSpec("colluders repeat");
  std::vector<scheme::Slot> view;
  for (std::uint32_t n : colluders) {
    if (n >= queries.servers.size()) throw InvalidSpec("colluder " + std::to_string(n + 1) + " out of range");
    const auto& slots = queries.servers[n].slots;
    view.insert(view.end(), slots.begin(), slots.end());
  }
  return view;
}

std::vector<std::vector<scheme::Slot>> collude_view(const Transcript& transcript,
                                                    std::span<const std::uint32_t> colluders) {
  std::vector<std::vector<scheme::Slot>> out;
  for (const auto& it : transcript.iterations) {
    out.push_back(collude_view(it.queries, colluders, transcript.spec.collusion()));
  }
  return out;
}

}  // namespace sempir::runtime
