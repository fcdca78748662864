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
#include <cstdint>
#include <span>
#include <vector>

#include "sempir/gf.hpp"
#include "sempir/params.hpp"
#include "sempir/rational.hpp"
#include "sempir/scheme.hpp"

namespace sempir::runtime {

// The replicated database, canonical message order.
struct MessageStore {
  gf::Field field;
  std::vector<std::vector<gf::Element>> messages;
};

MessageStore generate_messages(const params::ProblemSpec& spec, std::uint64_t seed);

// A server's answers: one field element per slot. Never sees theta.
std::vector<gf::Element> answer_query(const MessageStore& store, const scheme::ServerQuery& query);

struct RecoveredMessage {
  std::size_t theta = 0;                            // canonical index
  std::vector<gf::Element> symbols;                 // length L_theta
  std::vector<std::vector<std::uint64_t>> indices;  // per iteration, W_theta positions filled
};

struct IterationRecord {
  scheme::QuerySet queries;
  std::vector<std::vector<gf::Element>> answers;  // per server, per slot
};

struct Transcript {
  params::ProblemSpec spec;
  params::SubpacketPlan plan;
  std::size_t theta = 0;  // canonical index
  std::uint64_t seed = 0;
  std::vector<IterationRecord> iterations;
  scheme::DecodingScript script;
  RecoveredMessage recovered;
  std::uint64_t downloads = 0;
  Rational rate;
};

struct SessionOptions {
  scheme::BuildOptions build;
  bool keep_queries = true;  // drop coefficient rows from the transcript when false
};

// Per-iteration secrets, regenerated from the session seed.
scheme::SessionSecrets session_secrets(const params::SubpacketPlan& plan, std::size_t theta, std::uint64_t seed,
                                       std::uint64_t iteration, const scheme::BuildOptions& options = {});

std::uint64_t message_seed(std::uint64_t seed);

// `theta` is canonical. Throws IntegrityError when decoding disagrees with the store.
Transcript run_session(const params::ProblemSpec& spec, std::size_t theta, std::uint64_t seed,
                       const SessionOptions& options = {});

// Slots jointly observed by `colluders` (distinct, 0-based, size T), in
// colluder order then slot order.
std::vector<scheme::Slot> collude_view(const scheme::QuerySet& queries, std::span<const std::uint32_t> colluders,
                                       std::uint32_t collusion);
std::vector<std::vector<scheme::Slot>> collude_view(const Transcript& transcript,
                                                    std::span<const std::uint32_t> colluders);

}  // namespace sempir::runtime
