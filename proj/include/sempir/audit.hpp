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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sempir/params.hpp"
#include "sempir/scheme.hpp"

namespace sempir::audit {

struct StructureCheck {
  bool pass = false;
  std::vector<scheme::ShapeEntry> reference;  // digest for theta = message 1
  std::vector<std::size_t> differing;         // canonical thetas whose digest differs
};

// Builds one iteration of queries for every theta and compares shape digests.
StructureCheck check_structure(const params::ProblemSpec& spec, std::uint64_t seed,
                               const scheme::BuildOptions& options = {});

// Coded symbols of one interference code seen by a colluding set.
struct CodeCount {
  std::size_t theta = 0;
  std::vector<std::uint32_t> colluders;
  SubsetMask members = 0;
  std::size_t level = 0;
  std::uint64_t visible = 0;
  std::uint64_t dimension = 0;

  bool within() const noexcept { return visible <= dimension; }
  bool tight() const noexcept { return visible == dimension; }
};

struct CountingCheck {
  bool pass = true;
  std::size_t tight = 0;  // entries with visible == dimension
  std::vector<CodeCount> entries;
};

CountingCheck check_counting(const params::ProblemSpec& spec, std::size_t theta,
                             std::span<const std::uint32_t> colluders, const scheme::BuildOptions& options = {});

// Every theta against every T-subset (at most `max_subsets` of them, lex order).
CountingCheck check_counting_all(const params::ProblemSpec& spec, const scheme::BuildOptions& options = {},
                                 std::size_t max_subsets = 256);

// All T-subsets of {0..n-1} in lex order.
std::vector<std::vector<std::uint32_t>> colluding_sets(std::uint32_t servers, std::uint32_t collusion);

struct ChiSquare {
  double statistic = 0;
  std::size_t dof = 0;
  double p_value = 1;
  std::size_t categories = 0;  // after merging sparse cells
};

inline constexpr std::uint64_t kMinPooledCell = 10;

// Two-sample homogeneity test. Cells whose pooled count is below
// kMinPooledCell are merged before testing.
ChiSquare chi_square_homogeneity(const std::map<std::string, std::uint64_t>& a,
                                 const std::map<std::string, std::uint64_t>& b);

inline constexpr std::uint64_t kMinSamples = 1000;
inline constexpr std::uint64_t kSamplesPerSymbol = 5;

struct StatOptions {
  std::uint64_t samples = 5000;
  double significance = 0.01;
  std::uint64_t seed = 1;
  std::size_t max_subsets = 0;  // 0 = every colluding set
  bool self_compare = false;    // compare each theta against a fresh sample of itself
  scheme::BuildOptions build;
};

struct HomogeneityTest {
  std::size_t theta_a = 0;
  std::size_t theta_b = 0;
  std::vector<std::uint32_t> colluders;
  std::string projection;
  ChiSquare result;
  bool rejected = false;
};

struct StatsReport {
  std::uint64_t samples = 0;
  double significance = 0;
  double threshold = 0;  // per-test level after Bonferroni correction
  std::vector<HomogeneityTest> tests;
  bool rejected = false;
};

// Throws InsufficientSamples below kMinSamples, or when the field alphabet
// is too large for the sample count.
StatsReport stat_privacy_test(const params::ProblemSpec& spec, const StatOptions& options);

struct AuditReport {
  StructureCheck structure;
  CountingCheck counting;
  std::optional<StatsReport> stats;

  bool pass() const noexcept {
    return structure.pass && counting.pass && (!stats || !stats->rejected);
  }
};

AuditReport run_audit(const params::ProblemSpec& spec, std::uint64_t seed, const scheme::BuildOptions& options,
                      const std::optional<StatOptions>& stats);

// The small instance used for statistical audits by default.
params::ProblemSpec default_stat_instance();

}  // namespace sempir::audit
