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

#include "sempir/scheme.hpp"

#include <algorithm>
#include <sstream>

#include "sempir/error.hpp"
#include "sempir/random.hpp"

namespace sempir::scheme {

std::string to_string(Mutant m) {
  switch (m) {
    case Mutant::none:
      return "none";
    case Mutant::extra_desired_singleton:
      return "extra_desired_singleton";
    case Mutant::raw_interference:
      return "raw_interference";
  }
  return "none";
}

Mutant parse_mutant(const std::string& name) {
  for (Mutant m : {Mutant::none, Mutant::extra_desired_singleton, Mutant::raw_interference}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidSpec("unknown mutant '" + name + "'");
}

namespace {

void check_theta(const params::SubpacketPlan& plan, std::size_t theta) {
  if (theta >= plan.messages()) {
    throw InvalidSpec("theta " + std::to_string(theta + 1) + " out of range 1.." + std::to_string(plan.messages()));
  }
}

}  // namespace

std::uint64_t CombinationLedger::count(SubsetMask s) const {
  auto it = counts_.find(s);
  return it == counts_.end() ? 0 : it->second;
}

CombinationLedger build_ledger(const params::SubpacketPlan& plan, std::size_t theta, const BuildOptions& options) {
  check_theta(plan, theta);
  CombinationLedger ledger;
  ledger.servers_ = plan.servers;
  ledger.messages_ = plan.messages();
  ledger.theta_ = theta;

  for (SubsetMask s : ordered_subsets(plan.messages())) {
    Rational c = params::subset_slot_count(plan.servers, plan.collusion, plan.singletons, s);
    if (!is_integer(c)) {
      throw IntegrityError("fractional slot count " + sempir::to_string(c) + " for subset " + std::to_string(s));
    }
    if (c == 0) continue;
    ledger.counts_[s] = to_u64(c);
    ledger.subsets_.push_back(s);
    ledger.per_server_ += to_u64(c);
  }

  const std::uint32_t n_servers = plan.servers;
  const SubsetMask desired = singleton(theta);
  std::vector<std::vector<SlotRoute>> per_server(n_servers);
  std::uint64_t cursor = 0;
  for (SubsetMask s : ledger.subsets_) {
    const std::uint64_t c = ledger.counts_[s];
    const bool has_theta = subset_contains(s, theta);
    const SubsetMask rest = s & ~desired;
    for (std::uint32_t n = 0; n < n_servers; ++n) {
      for (std::uint64_t t = 0; t < c; ++t) {
        SlotRoute r;
        r.server = n;
        r.position = static_cast<std::uint32_t>(per_server[n].size());
        r.subset = s;
        if (has_theta) r.desired_index = cursor++;
        if (!has_theta) {
          r.code = s;
          r.coordinate = n * c + t;
        } else if (rest != 0) {
          r.code = rest;
          r.coordinate = n_servers * ledger.count(rest) + n * c + t;
        }
        per_server[n].push_back(r);
      }
    }
  }
  ledger.desired_total_ = cursor;

  if (options.mutant == Mutant::extra_desired_singleton && cursor > 0) {
    for (std::uint32_t n = 0; n < n_servers; ++n) {
      SlotRoute r;
      r.server = n;
      r.position = static_cast<std::uint32_t>(per_server[n].size());
      r.subset = desired;
      r.desired_index = n % cursor;
      per_server[n].push_back(r);
    }
  }

  for (auto& routes : per_server) {
    ledger.routes_.insert(ledger.routes_.end(), routes.begin(), routes.end());
  }
  return ledger;
}

const CodeAssignment* MdsAllocation::find(SubsetMask members) const {
  auto it = index_.find(members);
  return it == index_.end() ? nullptr : &codes_[it->second];
}

const CodeAssignment& MdsAllocation::at(SubsetMask members) const {
  const CodeAssignment* c = find(members);
  if (c == nullptr) throw IntegrityError("no code allocated for subset " + std::to_string(members));
  return *c;
}

std::vector<const CodeAssignment*> MdsAllocation::codes_for(std::size_t message, std::size_t level) const {
  std::vector<const CodeAssignment*> out;
  for (const auto& c : codes_) {
    if (c.level == level && subset_contains(c.members, message)) out.push_back(&c);
  }
  return out;
}

std::uint64_t MdsAllocation::consumed(std::size_t message) const {
  return message < consumed_.size() ? consumed_[message] : 0;
}

MdsAllocation allocate_mds(const params::SubpacketPlan& plan, std::size_t theta, const CombinationLedger& ledger,
                           mds::GeneratorCache& cache) {
  check_theta(plan, theta);
  if (ledger.theta() != theta || ledger.messages() != plan.messages()) {
    throw InvalidSpec("ledger was built for a different plan or theta");
  }
  MdsAllocation alloc;
  alloc.theta_ = theta;
  alloc.consumed_.assign(plan.messages(), 0);
  const std::uint64_t n_servers = plan.servers;
  const SubsetMask desired = singleton(theta);

  for (SubsetMask s : ledger.subsets()) {
    if (subset_contains(s, theta)) continue;
    CodeAssignment code;
    code.members = s;
    code.level = subset_size(s);
    code.dimension = n_servers * ledger.count(s);
    code.length = code.dimension + n_servers * ledger.count(s | desired);
    for (std::size_t j : subset_members(s)) {
      code.segments.push_back({j, alloc.consumed_[j]});
      alloc.consumed_[j] += code.dimension;
    }
    if (2 * std::uint64_t{code.length} > plan.field.modulus()) {
      throw FieldTooSmall("GF(" + std::to_string(plan.field.modulus()) + ") is too small for a length-" +
                          std::to_string(code.length) + " code (need p >= " + std::to_string(2 * code.length) + ")");
    }
    code.generator = cache.get(code.length, code.dimension);
    alloc.index_[s] = alloc.codes_.size();
    alloc.codes_.push_back(std::move(code));
  }

  std::vector<InfeasiblePlan::Entry> over;
  for (std::size_t j = 0; j < plan.messages(); ++j) {
    if (alloc.consumed_[j] > plan.block_sizes[j]) {
      over.push_back({j, std::to_string(alloc.consumed_[j]) + " > " + std::to_string(plan.block_sizes[j])});
    }
  }
  if (!over.empty()) throw InfeasiblePlan("interference codes consume more symbols than a block holds", over, 1);
  return alloc;
}

SessionSecrets draw_scramblers(const params::SubpacketPlan& plan, std::size_t theta, std::uint64_t seed,
                               const BuildOptions& options) {
  check_theta(plan, theta);
  SessionSecrets secrets;
  secrets.seed = seed;
  secrets.theta = theta;
  const gf::Field& f = plan.field;
  Rng rng(seed);
  for (std::size_t i = 0; i < plan.messages(); ++i) {
    const std::size_t u = plan.block_sizes[i];
    if (options.mutant == Mutant::raw_interference && theta == 0 && i != theta) {
      secrets.scramblers.push_back(gf::Matrix::identity(u));
      continue;
    }
    bool done = false;
    for (int attempt = 0; attempt < kScramblerRetries && !done; ++attempt) {
      gf::Matrix m(u, u);
      for (std::size_t r = 0; r < u; ++r) {
        for (auto& e : m.row(r)) e = rng.element(f);
      }
      if (gf::rank(f, m) == u) {
        secrets.scramblers.push_back(std::move(m));
        done = true;
      }
    }
    if (!done) {
      throw FieldTooSmall("no invertible " + std::to_string(u) + "x" + std::to_string(u) + " scrambler after " +
                          std::to_string(kScramblerRetries) + " draws over GF(" + std::to_string(f.modulus()) + ")");
    }
  }
  return secrets;
}

DecodingScript build_script([[maybe_unused]] const params::SubpacketPlan& plan, std::size_t theta, const CombinationLedger& ledger,
                            const MdsAllocation& allocation) {
  DecodingScript script;
  script.theta = theta;
  script.block_size = ledger.desired_total();

  std::map<SubsetMask, std::size_t> step_of;
  for (const auto& code : allocation.codes()) {
    if (code.length == code.dimension) continue;  // no parity is ever needed
    step_of[code.members] = script.parity.size();
    script.parity.push_back({code.members, std::vector<SlotRef>(code.dimension, SlotRef{0, 0})});
  }
  for (const auto& r : ledger.routes()) {
    if (r.desired_index || r.code == 0) continue;
    auto it = step_of.find(r.code);
    if (it == step_of.end()) continue;
    script.parity[it->second].systematic.at(r.coordinate) = {r.server, r.position};
  }
  for (const auto& r : ledger.routes()) {
    if (!r.desired_index) continue;
    DesiredStep d;
    d.slot = {r.server, r.position};
    d.index = *r.desired_index;
    if (r.code != 0) {
      d.parity_step = step_of.at(r.code);
      d.coordinate = r.coordinate;
    }
    script.desired.push_back(d);
  }
  return script;
}

BuiltQueries build_queries(const params::SubpacketPlan& plan, std::size_t theta, std::uint64_t iteration,
                           const SessionSecrets& secrets, const CombinationLedger& ledger,
                           const MdsAllocation& allocation) {
  check_theta(plan, theta);
  if (secrets.theta != theta || secrets.scramblers.size() != plan.messages()) {
    throw InvalidSpec("secrets do not match the requested retrieval");
  }
  const gf::Field& f = plan.field;

  // Composite parity rows G_parity * S_j[segment], per (code, member).
  std::map<std::pair<SubsetMask, std::size_t>, gf::Matrix> parity_rows;
  for (const auto& code : allocation.codes()) {
    if (code.length == code.dimension) continue;
    gf::Matrix g_parity = code.generator->matrix().row_block(code.dimension, code.length - code.dimension);
    for (const auto& seg : code.segments) {
      gf::Matrix block = secrets.scramblers[seg.message].row_block(seg.offset, code.dimension);
      parity_rows.emplace(std::make_pair(code.members, seg.message), gf::multiply(f, g_parity, block));
    }
  }

  BuiltQueries out;
  out.queries.servers.resize(plan.servers);
  for (std::uint32_t n = 0; n < plan.servers; ++n) {
    auto& q = out.queries.servers[n];
    q.server = n;
    q.iteration = iteration;
    q.block_sizes = plan.block_sizes;
  }
  for (const auto& r : ledger.routes()) {
    Slot slot;
    slot.subset = r.subset;
    for (std::size_t m : subset_members(r.subset)) {
      const gf::Matrix& s = secrets.scramblers[m];
      Term term{m, {}};
      if (m == theta) {
        auto row = s.row(*r.desired_index);
        term.coefficients.assign(row.begin(), row.end());
      } else {
        const CodeAssignment& code = allocation.at(r.code);
        if (r.coordinate < code.dimension) {
          auto seg = std::find_if(code.segments.begin(), code.segments.end(),
                                  [m](const InfoSegment& x) { return x.message == m; });
          auto row = s.row(seg->offset + r.coordinate);
          term.coefficients.assign(row.begin(), row.end());
        } else {
          auto row = parity_rows.at({code.members, m}).row(r.coordinate - code.dimension);
          term.coefficients.assign(row.begin(), row.end());
        }
      }
      slot.terms.push_back(std::move(term));
    }
    out.queries.servers[r.server].slots.push_back(std::move(slot));
  }
  out.script = build_script(plan, theta, ledger, allocation);
  return out;
}

Layout build_layout(const params::SubpacketPlan& plan, std::size_t theta, mds::GeneratorCache& cache,
                    const BuildOptions& options) {
  CombinationLedger ledger = build_ledger(plan, theta, options);
  MdsAllocation allocation = allocate_mds(plan, theta, ledger, cache);
  DecodingScript script = build_script(plan, theta, ledger, allocation);
  return {std::move(ledger), std::move(allocation), std::move(script)};
}

std::vector<ShapeEntry> shape_digest(const QuerySet& q) {
  std::map<std::pair<std::uint32_t, SubsetMask>, std::uint64_t> counts;
  for (const auto& sq : q.servers) {
    for (const auto& slot : sq.slots) ++counts[{sq.server, slot.subset}];
  }
  std::vector<ShapeEntry> out;
  for (const auto& [key, c] : counts) out.push_back({key.first, key.second, c});
  return out;
}

std::vector<ShapeEntry> shape_digest(const CombinationLedger& ledger) {
  std::map<std::pair<std::uint32_t, SubsetMask>, std::uint64_t> counts;
  for (const auto& r : ledger.routes()) ++counts[{r.server, r.subset}];
  std::vector<ShapeEntry> out;
  for (const auto& [key, c] : counts) out.push_back({key.first, key.second, c});
  return out;
}

std::string render_digest(const std::vector<ShapeEntry>& digest) {
  std::ostringstream os;
  for (const auto& e : digest) {
    os << "server " << e.server + 1 << ' ' << subset_label(e.subset, [](std::size_t i) { return i + 1; }) << ' '
       << e.count << '\n';
  }
  return os.str();
}

}  // namespace sempir::scheme
