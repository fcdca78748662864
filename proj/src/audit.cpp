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

#include "sempir/audit.hpp"

#include <algorithm>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "sempir/error.hpp"
#include "sempir/mds.hpp"
#include "sempir/random.hpp"
#include "sempir/runtime.hpp"

namespace sempir::audit {

StructureCheck check_structure(const params::ProblemSpec& spec, std::uint64_t seed,
                               const scheme::BuildOptions& options) {
  const params::SubpacketPlan plan = params::compute_plan(spec);
  mds::GeneratorCache cache(plan.field);
  StructureCheck out;
  out.pass = true;
  for (std::size_t theta = 0; theta < plan.messages(); ++theta) {
    scheme::Layout layout = scheme::build_layout(plan, theta, cache, options);
    auto secrets = runtime::session_secrets(plan, theta, seed, 0, options);
    auto built = scheme::build_queries(plan, theta, 0, secrets, layout.ledger, layout.allocation);
    auto digest = scheme::shape_digest(built.queries);
    if (digest != scheme::shape_digest(layout.ledger)) {
      throw IntegrityError("query shape disagrees with its ledger");
    }
    if (theta == 0) {
      out.reference = std::move(digest);
    } else if (digest != out.reference) {
      out.differing.push_back(theta);
      out.pass = false;
    }
  }
  return out;
}

namespace {

void check_colluders(const params::ProblemSpec& spec, std::span<const std::uint32_t> colluders) {
  if (colluders.size() != spec.collusion()) {
    throw InvalidSpec("colluding set has " + std::to_string(colluders.size()) + " servers, expected " +
                      std::to_string(spec.collusion()));
  }
  std::vector<std::uint32_t> s(colluders.begin(), colluders.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= spec.servers()) {
    throw InvalidSpec("colluders must be distinct servers in range");
  }
}

void count_codes(const scheme::CombinationLedger& ledger, const scheme::MdsAllocation& allocation,
                 std::span<const std::uint32_t> colluders, CountingCheck& out) {
  std::map<SubsetMask, std::uint64_t> visible;
  for (const auto& r : ledger.routes()) {
    if (r.code == 0) continue;
    if (std::find(colluders.begin(), colluders.end(), r.server) == colluders.end()) continue;
    ++visible[r.code];
  }
  for (const auto& code : allocation.codes()) {
    CodeCount c;
    c.theta = ledger.theta();
    c.colluders.assign(colluders.begin(), colluders.end());
    c.members = code.members;
    c.level = code.level;
    c.visible = visible[code.members];
    c.dimension = code.dimension;
    if (!c.within()) out.pass = false;
    if (c.tight()) ++out.tight;
    out.entries.push_back(std::move(c));
  }
}

}  // namespace

CountingCheck check_counting(const params::ProblemSpec& spec, std::size_t theta,
                             std::span<const std::uint32_t> colluders, const scheme::BuildOptions& options) {
  check_colluders(spec, colluders);
  const params::SubpacketPlan plan = params::compute_plan(spec);
  mds::GeneratorCache cache(plan.field);
  auto ledger = scheme::build_ledger(plan, theta, options);
  auto allocation = scheme::allocate_mds(plan, theta, ledger, cache);
  CountingCheck out;
  count_codes(ledger, allocation, colluders, out);
  return out;
}

CountingCheck check_counting_all(const params::ProblemSpec& spec, const scheme::BuildOptions& options,
                                 std::size_t max_subsets) {
  const params::SubpacketPlan plan = params::compute_plan(spec);
  mds::GeneratorCache cache(plan.field);
  auto sets = colluding_sets(spec.servers(), spec.collusion());
  if (max_subsets != 0 && sets.size() > max_subsets) sets.resize(max_subsets);
  CountingCheck out;
  for (std::size_t theta = 0; theta < plan.messages(); ++theta) {
    auto ledger = scheme::build_ledger(plan, theta, options);
    auto allocation = scheme::allocate_mds(plan, theta, ledger, cache);
    for (const auto& s : sets) count_codes(ledger, allocation, s, out);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> colluding_sets(std::uint32_t servers, std::uint32_t collusion) {
  std::vector<std::vector<std::uint32_t>> out;
  if (collusion > servers) return out;
  std::vector<std::uint32_t> cur(collusion);
  std::iota(cur.begin(), cur.end(), 0u);
  while (true) {
    out.push_back(cur);
    std::size_t i = collusion;
    while (i > 0 && cur[i - 1] == servers - collusion + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < collusion; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

ChiSquare chi_square_homogeneity(const std::map<std::string, std::uint64_t>& a,
                                 const std::map<std::string, std::uint64_t>& b) {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> cells;
  for (const auto& [k, v] : a) cells[k].first += v;
  for (const auto& [k, v] : b) cells[k].second += v;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> kept;
  std::pair<std::uint64_t, std::uint64_t> other{0, 0};
  for (const auto& [k, c] : cells) {
    if (c.first + c.second < kMinPooledCell) {
      other.first += c.first;
      other.second += c.second;
    } else {
      kept.push_back(c);
    }
  }
  if (other.first + other.second > 0) {
    if (other.first + other.second >= kMinPooledCell || kept.empty()) {
      kept.push_back(other);
    } else {
      auto smallest = std::min_element(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
        return x.first + x.second < y.first + y.second;
      });
      smallest->first += other.first;
      smallest->second += other.second;
    }
  }

  double na = 0;
  double nb = 0;
  for (const auto& c : kept) {
    na += static_cast<double>(c.first);
    nb += static_cast<double>(c.second);
  }
  if (na == 0 || nb == 0) throw InsufficientSamples("homogeneity test needs two nonempty samples");

  ChiSquare out;
  out.categories = kept.size();
  if (kept.size() < 2) return out;
  const double total = na + nb;
  for (const auto& c : kept) {
    const double pooled = static_cast<double>(c.first + c.second);
    const double ea = pooled * na / total;
    const double eb = pooled * nb / total;
    const double da = static_cast<double>(c.first) - ea;
    const double db = static_cast<double>(c.second) - eb;
    out.statistic += da * da / ea + db * db / eb;
  }
  out.dof = kept.size() - 1;
  out.p_value = boost::math::gamma_q(static_cast<double>(out.dof) / 2.0, out.statistic / 2.0);
  return out;
}

namespace {

using Histogram = std::map<std::string, std::uint64_t>;
// projection name -> histogram, for one colluding set.
using ProjectionCounts = std::map<std::string, Histogram>;

std::string label(const params::ProblemSpec& spec, std::size_t canonical) {
  return "W" + std::to_string(spec.user_index(canonical) + 1);
}

void project(const params::ProblemSpec& spec, const std::vector<scheme::Slot>& view, ProjectionCounts& counts) {
  const gf::Field& f = spec.field();
  std::vector<std::vector<std::span<const gf::Element>>> rows(spec.messages());
  for (std::size_t pos = 0; pos < view.size(); ++pos) {
    for (const auto& term : view[pos].terms) {
      const std::string where = "[" + std::to_string(pos) + "," + label(spec, term.message) + "]";
      const auto& c = term.coefficients;
      ++counts["value" + where][std::to_string(c.empty() ? 0 : c[0].value)];
      auto nz = std::find_if(c.begin(), c.end(), [](gf::Element e) { return e.value != 0; });
      ++counts["first_nonzero" + where][nz == c.end() ? "none" : std::to_string(nz - c.begin())];
      rows[term.message].push_back(c);
    }
  }
  std::string profile;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    gf::Matrix m(rows[i].size(), rows[i][0].size());
    for (std::size_t r = 0; r < rows[i].size(); ++r) std::copy(rows[i][r].begin(), rows[i][r].end(), m.row(r).begin());
    profile += label(spec, i) + ":";
    for (std::size_t c : gf::pivot_columns(f, m)) profile += std::to_string(c) + ",";
    profile += "|";
  }
  ++counts["rank_profile"][profile];
}

}  // namespace

StatsReport stat_privacy_test(const params::ProblemSpec& spec, const StatOptions& options) {
  if (options.samples < kMinSamples) {
    throw InsufficientSamples("statistical audit needs at least " + std::to_string(kMinSamples) + " samples, got " +
                              std::to_string(options.samples));
  }
  const std::uint64_t alphabet = spec.field().modulus();
  if (options.samples < kSamplesPerSymbol * alphabet) {
    throw InsufficientSamples("GF(" + std::to_string(alphabet) + ") needs at least " +
                              std::to_string(kSamplesPerSymbol * alphabet) +
                              " samples for populated value histograms, got " + std::to_string(options.samples));
  }
  if (!(options.significance > 0 && options.significance < 1)) throw InvalidSpec("significance must be in (0, 1)");

  const params::SubpacketPlan plan = params::compute_plan(spec);
  const std::size_t k = plan.messages();
  mds::GeneratorCache cache(plan.field);
  auto sets = colluding_sets(spec.servers(), spec.collusion());
  if (options.max_subsets != 0 && sets.size() > options.max_subsets) sets.resize(options.max_subsets);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < k; ++a) {
    if (options.self_compare) {
      pairs.emplace_back(a, a);
      continue;
    }
    for (std::size_t b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
  }

  // samples[(theta, copy)][colluding set] -> projections
  std::map<std::pair<std::size_t, int>, std::vector<ProjectionCounts>> samples;
  auto collect = [&](std::size_t theta, int copy) {
    auto key = std::make_pair(theta, copy);
    if (samples.count(key)) return;
    auto& per_set = samples[key];
    per_set.resize(sets.size());
    scheme::Layout layout = scheme::build_layout(plan, theta, cache, options.build);
    const std::uint64_t stream = derive_seed(options.seed, "audit", 2 * theta + static_cast<std::uint64_t>(copy));
    for (std::uint64_t m = 0; m < options.samples; ++m) {
      auto secrets = scheme::draw_scramblers(plan, theta, derive_seed(stream, "trial", m), options.build);
      auto built = scheme::build_queries(plan, theta, 0, secrets, layout.ledger, layout.allocation);
      for (std::size_t s = 0; s < sets.size(); ++s) {
        project(spec, runtime::collude_view(built.queries, sets[s], spec.collusion()), per_set[s]);
      }
    }
  };

  StatsReport report;
  report.samples = options.samples;
  report.significance = options.significance;
  for (const auto& [a, b] : pairs) {
    collect(a, 0);
    collect(b, a == b ? 1 : 0);
    const auto& sa = samples.at({a, 0});
    const auto& sb = samples.at({b, a == b ? 1 : 0});
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::vector<std::string> names;
      for (const auto& [n, h] : sa[s]) names.push_back(n);
      for (const auto& [n, h] : sb[s]) {
        if (!sa[s].count(n)) names.push_back(n);
      }
      std::sort(names.begin(), names.end());
      for (const auto& n : names) {
        const Histogram absent{{"absent", options.samples}};
        auto ia = sa[s].find(n);
        auto ib = sb[s].find(n);
        HomogeneityTest t;
        t.theta_a = a;
        t.theta_b = b;
        t.colluders = sets[s];
        t.projection = n;
        t.result = chi_square_homogeneity(ia == sa[s].end() ? absent : ia->second,
                                          ib == sb[s].end() ? absent : ib->second);
        report.tests.push_back(std::move(t));
      }
    }
  }
  report.threshold = report.tests.empty() ? options.significance
                                          : options.significance / static_cast<double>(report.tests.size());
  for (auto& t : report.tests) {
    t.rejected = t.result.p_value < report.threshold;
    if (t.rejected) report.rejected = true;
  }
  return report;
}

AuditReport run_audit(const params::ProblemSpec& spec, std::uint64_t seed, const scheme::BuildOptions& options,
                      const std::optional<StatOptions>& stats) {
  AuditReport report;
  report.structure = check_structure(spec, seed, options);
  report.counting = check_counting_all(spec, options);
  if (stats) {
    StatOptions so = *stats;
    so.build = options;
    report.stats = stat_privacy_test(spec, so);
  }
  return report;
}

params::ProblemSpec default_stat_instance() { return params::ProblemSpec(3, 2, {9, 9}, {}, gf::Field(19)); }

}  // namespace sempir::audit
