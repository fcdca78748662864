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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sempir/gf.hpp"
#include "sempir/mds.hpp"
#include "sempir/params.hpp"
#include "sempir/subset.hpp"

namespace sempir::scheme {

// Test hooks that plant privacy defects.
enum class Mutant {
  none,
  extra_desired_singleton,  // one more singleton of the desired message per server
  raw_interference,         // identity scramblers for interference when theta is message 0
};

std::string to_string(Mutant m);
Mutant parse_mutant(const std::string& name);

struct BuildOptions {
  Mutant mutant = Mutant::none;
};

// Where one downloaded slot gets its symbols from.
struct SlotRoute {
  std::uint32_t server = 0;
  std::uint32_t position = 0;                   // index within the server's query
  SubsetMask subset = 0;
  std::optional<std::uint64_t> desired_index;   // fresh W'_theta index
  SubsetMask code = 0;                          // interference code, 0 when none
  std::size_t coordinate = 0;                   // codeword coordinate in `code`
};

class CombinationLedger {
 public:
  std::uint32_t servers() const noexcept { return servers_; }
  std::size_t messages() const noexcept { return messages_; }
  std::size_t theta() const noexcept { return theta_; }

  // Per-server slot count of subset `s`; 0 for absent subsets.
  std::uint64_t count(SubsetMask s) const;
  const std::map<SubsetMask, std::uint64_t>& counts() const noexcept { return counts_; }
  // Subsets with a nonzero count, size-then-lex order.
  const std::vector<SubsetMask>& subsets() const noexcept { return subsets_; }

  std::uint64_t slots_per_server() const noexcept { return per_server_; }
  std::uint64_t total() const noexcept { return per_server_ * servers_; }
  std::uint64_t desired_total() const noexcept { return desired_total_; }

  // Routes grouped by server, then by position.
  const std::vector<SlotRoute>& routes() const noexcept { return routes_; }

 private:
  friend CombinationLedger build_ledger(const params::SubpacketPlan&, std::size_t, const BuildOptions&);

  std::uint32_t servers_ = 0;
  std::size_t messages_ = 0;
  std::size_t theta_ = 0;
  std::map<SubsetMask, std::uint64_t> counts_;
  std::vector<SubsetMask> subsets_;
  std::uint64_t per_server_ = 0;
  std::uint64_t desired_total_ = 0;
  std::vector<SlotRoute> routes_;
};

struct InfoSegment {
  std::size_t message;
  std::uint64_t offset;  // first W'_j index fed to the code
};

// One shared code per interference subset: members add their info segments
// and the sum is again a codeword.
struct CodeAssignment {
  SubsetMask members = 0;
  std::size_t level = 0;
  std::size_t dimension = 0;
  std::size_t length = 0;
  std::vector<InfoSegment> segments;
  std::shared_ptr<const mds::MdsGenerator> generator;
};

class MdsAllocation {
 public:
  std::size_t theta() const noexcept { return theta_; }
  const std::vector<CodeAssignment>& codes() const noexcept { return codes_; }
  const CodeAssignment* find(SubsetMask members) const;
  const CodeAssignment& at(SubsetMask members) const;
  std::vector<const CodeAssignment*> codes_for(std::size_t message, std::size_t level) const;
  // W'_j symbols fed into codes.
  std::uint64_t consumed(std::size_t message) const;

 private:
  friend MdsAllocation allocate_mds(const params::SubpacketPlan&, std::size_t, const CombinationLedger&,
                                    mds::GeneratorCache&);

  std::size_t theta_ = 0;
  std::vector<CodeAssignment> codes_;
  std::map<SubsetMask, std::size_t> index_;
  std::vector<std::uint64_t> consumed_;
};

struct Term {
  std::size_t message;                   // canonical index
  std::vector<gf::Element> coefficients; // length U_message
};

struct Slot {
  SubsetMask subset = 0;
  std::vector<Term> terms;  // ascending message order
};

struct ServerQuery {
  std::uint32_t server = 0;
  std::uint64_t iteration = 0;
  std::vector<std::uint64_t> block_sizes;
  std::vector<Slot> slots;
};

// Queries of one iteration, one entry per server.
struct QuerySet {
  std::vector<ServerQuery> servers;
};

struct SlotRef {
  std::uint32_t server;
  std::uint32_t position;
};

// Rebuild codeword `code` from its systematic answers.
struct ParityStep {
  SubsetMask code = 0;
  std::vector<SlotRef> systematic;  // coordinate order, length = dimension
};

// answer(slot) - parity(step, coordinate) = W'_theta[index].
struct DesiredStep {
  SlotRef slot;
  std::uint64_t index = 0;
  std::optional<std::size_t> parity_step;
  std::size_t coordinate = 0;
};

struct DecodingScript {
  std::size_t theta = 0;
  std::uint64_t block_size = 0;  // U_theta
  std::vector<ParityStep> parity;
  std::vector<DesiredStep> desired;
};

struct SessionSecrets {
  std::uint64_t seed = 0;  // iteration seed
  std::size_t theta = 0;
  std::vector<gf::Matrix> scramblers;
};

inline constexpr int kScramblerRetries = 64;

SessionSecrets draw_scramblers(const params::SubpacketPlan& plan, std::size_t theta, std::uint64_t seed,
                               const BuildOptions& options = {});

CombinationLedger build_ledger(const params::SubpacketPlan& plan, std::size_t theta, const BuildOptions& options = {});

MdsAllocation allocate_mds(const params::SubpacketPlan& plan, std::size_t theta, const CombinationLedger& ledger,
                           mds::GeneratorCache& cache);

struct BuiltQueries {
  QuerySet queries;
  DecodingScript script;
};

BuiltQueries build_queries(const params::SubpacketPlan& plan, std::size_t theta, std::uint64_t iteration,
                           const SessionSecrets& secrets, const CombinationLedger& ledger,
                           const MdsAllocation& allocation);

// Everything public about a (plan, theta) pair; reusable across iterations.
struct Layout {
  CombinationLedger ledger;
  MdsAllocation allocation;
  DecodingScript script;
};

Layout build_layout(const params::SubpacketPlan& plan, std::size_t theta, mds::GeneratorCache& cache,
                    const BuildOptions& options = {});

DecodingScript build_script(const params::SubpacketPlan& plan, std::size_t theta, const CombinationLedger& ledger,
                            const MdsAllocation& allocation);

struct ShapeEntry {
  std::uint32_t server;
  SubsetMask subset;
  std::uint64_t count;

  friend auto operator<=>(const ShapeEntry&, const ShapeEntry&) = default;
};

std::vector<ShapeEntry> shape_digest(const QuerySet& q);
std::vector<ShapeEntry> shape_digest(const CombinationLedger& ledger);
std::string render_digest(const std::vector<ShapeEntry>& digest);

}  // namespace sempir::scheme
