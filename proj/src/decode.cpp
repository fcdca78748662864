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

#include "sempir/decode.hpp"

#include <algorithm>
#include <string>

#include "sempir/error.hpp"
#include "sempir/mds.hpp"

namespace sempir::decode {

namespace {

gf::Element answer_at(std::span<const gf::Matrix> answers, const scheme::SlotRef& ref, std::size_t col) {
  if (ref.server >= answers.size() || ref.position >= answers[ref.server].rows()) {
    throw InsufficientData("missing answer for server " + std::to_string(ref.server + 1) + " slot " +
                           std::to_string(ref.position));
  }
  return answers[ref.server](ref.position, col);
}

}  // namespace

gf::Matrix execute_rows(const scheme::DecodingScript& script, std::span<const gf::Matrix> answers,
                        const scheme::MdsAllocation& allocation, const gf::Field& field) {
  if (answers.empty()) throw InsufficientData("no answers");
  const std::size_t width = answers[0].cols();
  for (const auto& a : answers) {
    if (a.cols() != width) throw DimensionMismatch("answer rows differ in width");
  }

  // Full codewords, one column per answer component.
  std::vector<gf::Matrix> codewords;
  codewords.reserve(script.parity.size());
  std::vector<mds::KnownSymbol> known;
  for (const auto& step : script.parity) {
    const scheme::CodeAssignment& code = allocation.at(step.code);
    if (step.systematic.size() != code.dimension) throw IntegrityError("parity step does not cover its code");
    gf::Matrix cw(code.length, width);
    for (std::size_t c = 0; c < width; ++c) {
      known.clear();
      for (std::size_t i = 0; i < step.systematic.size(); ++i) {
        known.push_back({i, answer_at(answers, step.systematic[i], c)});
      }
      auto full = mds::complete_codeword(*code.generator, known);
      for (std::size_t r = 0; r < full.size(); ++r) cw(r, c) = full[r];
    }
    codewords.push_back(std::move(cw));
  }

  gf::Matrix out(script.block_size, width);
  std::vector<bool> filled(script.block_size, false);
  std::vector<gf::Element> row(width);
  for (const auto& d : script.desired) {
    if (d.index >= script.block_size) throw IntegrityError("desired index out of range");
    for (std::size_t c = 0; c < width; ++c) {
      gf::Element v = answer_at(answers, d.slot, c);
      if (d.parity_step) v = field.sub(v, codewords.at(*d.parity_step)(d.coordinate, c));
      row[c] = v;
    }
    auto dst = out.row(d.index);
    if (filled[d.index]) {
      if (!std::equal(row.begin(), row.end(), dst.begin())) {
        throw IntegrityError("repeated symbol " + std::to_string(d.index) + " decodes inconsistently");
      }
      continue;
    }
    std::copy(row.begin(), row.end(), dst.begin());
    filled[d.index] = true;
  }
  for (std::size_t i = 0; i < filled.size(); ++i) {
    if (!filled[i]) throw InsufficientData("script leaves symbol " + std::to_string(i) + " undecoded");
  }
  return out;
}

std::vector<gf::Element> execute_script(const scheme::DecodingScript& script,
                                        std::span<const std::vector<gf::Element>> answers,
                                        const scheme::MdsAllocation& allocation, const gf::Field& field) {
  std::vector<gf::Matrix> columns;
  columns.reserve(answers.size());
  for (const auto& a : answers) columns.emplace_back(a.size(), 1, a);
  gf::Matrix rows = execute_rows(script, columns, allocation, field);
  auto d = rows.data();
  return {d.begin(), d.end()};
}

std::vector<gf::Element> recover_iteration(const scheme::DecodingScript& script,
                                           std::span<const std::vector<gf::Element>> answers,
                                           const scheme::MdsAllocation& allocation,
                                           const scheme::SessionSecrets& secrets, const gf::Field& field) {
  if (secrets.theta != script.theta || secrets.theta >= secrets.scramblers.size()) {
    throw InvalidSpec("secrets do not belong to this retrieval");
  }
  const gf::Matrix& s = secrets.scramblers[script.theta];
  if (s.rows() != script.block_size) throw IntegrityError("script recovers a block of the wrong size");
  std::vector<gf::Element> scrambled = execute_script(script, answers, allocation, field);
  return gf::solve(field, s, scrambled);
}

runtime::RecoveredMessage recover_message(const runtime::Transcript& transcript,
                                          std::span<const scheme::SessionSecrets> secrets) {
  const auto& plan = transcript.plan;
  if (secrets.size() != transcript.iterations.size()) {
    throw InvalidSpec("expected secrets for " + std::to_string(transcript.iterations.size()) + " iterations");
  }
  mds::GeneratorCache cache(plan.field);
  scheme::CombinationLedger ledger = scheme::build_ledger(plan, transcript.theta);
  scheme::MdsAllocation allocation = scheme::allocate_mds(plan, transcript.theta, ledger, cache);

  runtime::RecoveredMessage out;
  out.theta = transcript.theta;
  const std::uint64_t u = plan.block_sizes.at(transcript.theta);
  for (std::size_t a = 0; a < transcript.iterations.size(); ++a) {
    auto block = recover_iteration(transcript.script, transcript.iterations[a].answers, allocation, secrets[a],
                                   plan.field);
    std::vector<std::uint64_t> idx(u);
    for (std::uint64_t r = 0; r < u; ++r) idx[r] = a * u + r;
    out.symbols.insert(out.symbols.end(), block.begin(), block.end());
    out.indices.push_back(std::move(idx));
  }
  return out;
}

}  // namespace sempir::decode
