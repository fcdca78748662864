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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sempir/gf.hpp"
#include "sempir/rational.hpp"
#include "sempir/subset.hpp"

namespace sempir::params {

// One retrieval instance. Lengths are held in canonical (non-increasing)
// order; the permutation back to the caller's order is retained so that
// user-facing indices survive round trips.
class ProblemSpec {
 public:
  // Empty `priors` means uniform; has_priors() then reports false.
  ProblemSpec(std::uint32_t servers, std::uint32_t collusion, std::vector<std::uint64_t> lengths,
              std::vector<Rational> priors = {}, gf::Field field = gf::Field());

  std::uint32_t servers() const noexcept { return servers_; }
  std::uint32_t collusion() const noexcept { return collusion_; }
  std::size_t messages() const noexcept { return lengths_.size(); }
  const gf::Field& field() const noexcept { return field_; }

  const std::vector<std::uint64_t>& lengths() const noexcept { return lengths_; }
  const std::vector<Rational>& priors() const noexcept { return priors_; }
  bool has_priors() const noexcept { return has_priors_; }

  // 0-based index conversions between canonical and caller order.
  std::size_t user_index(std::size_t canonical) const { return order_.at(canonical); }
  std::size_t canonical_index(std::size_t user) const;
  const std::vector<std::size_t>& order() const noexcept { return order_; }

  std::vector<std::uint64_t> user_lengths() const;
  std::vector<Rational> user_priors() const;

  ProblemSpec scaled(std::uint64_t factor) const;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;

 private:
  std::uint32_t servers_;
  std::uint32_t collusion_;
  std::vector<std::uint64_t> lengths_;
  std::vector<Rational> priors_;
  std::vector<std::size_t> order_;  // canonical -> user
  bool has_priors_;
  gf::Field field_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

struct VMatrices {
  RationalMatrix v;      // maps per-server singleton counts to block sizes
  RationalMatrix v_inv;  // closed-form inverse
};

// Per-iteration sub-packetization. Every message i is split into
// `repetitions` blocks of block_sizes[i] symbols; one iteration downloads
// singletons[i] single-message symbols of i from every server.
struct SubpacketPlan {
  std::uint32_t servers = 0;
  std::uint32_t collusion = 0;
  gf::Field field;
  std::uint64_t repetitions = 0;                // alpha
  std::vector<std::uint64_t> block_sizes;       // U_i = L_i / alpha
  std::vector<std::uint64_t> singletons;        // nu_i
  std::uint64_t downloads = 0;                  // D, symbols per iteration
  std::vector<std::uint64_t> desired_per_theta; // U_theta, closed form
  std::vector<BigInt> unscaled;                 // M = V^-1 L

  std::size_t messages() const noexcept { return block_sizes.size(); }
};

struct Lift {
  ProblemSpec spec;
  std::uint64_t factor;
};

enum class Verdict { higher, equal, lower };

std::string to_string(Verdict v);

// One comparator against a baseline scheme.
struct Comparison {
  std::string name;
  Rational condition;                    // value of the sufficient condition's expression
  std::vector<Rational> condition_terms; // per-index terms, where the condition is a list
  bool condition_holds = false;
  Rational semantic_rate;
  Rational baseline_rate;
  Verdict verdict = Verdict::equal;      // semantic rate relative to the baseline
};

struct RateReport {
  Rational rate;      // achieved E[L] / E[D] of the plan
  Rational capacity;
  Rational semantic_pir_capacity;  // the same instance without collusion
  std::vector<Comparison> comparisons;
};

Rational expected_length(const ProblemSpec& spec);

// sum_i (T/N)^(i-1) L_i over the lengths in the order given.
Rational weighted_download(std::uint32_t servers, std::uint32_t collusion, std::span<const std::uint64_t> lengths);

Rational capacity(const ProblemSpec& spec);

// Max over message orderings of the weighted download; attained by the
// non-increasing order.
Rational converse_bound(const ProblemSpec& spec);

VMatrices build_v_matrix(const ProblemSpec& spec);

// V^-1 L as exact rationals.
std::vector<Rational> unscaled_solution(const ProblemSpec& spec);

// Per-server count of s-sums over `subset`: ((N-T)/T)^(s-1) * min nu_S.
Rational subset_slot_count(std::uint32_t servers, std::uint32_t collusion, std::span<const std::uint64_t> singletons,
                           SubsetMask subset);

SubpacketPlan compute_plan(const ProblemSpec& spec);

Lift feasibility_lift(const ProblemSpec& spec);

// U_theta from its closed form (canonical 0-based theta).
BigInt desired_symbols(std::uint32_t servers, std::uint32_t collusion, std::span<const std::uint64_t> singletons,
                       std::size_t theta);

Comparison compare_tpir(const ProblemSpec& spec);
Comparison compare_pir(const ProblemSpec& spec);
enum class PaddingBaseline { tpir, pir };

// Zero padding every message to L_1, then equal-length capacity-achieving
// retrieval with T colluders (tpir) or none (pir):
// rate = E[L] / (L_1 * sum_{i<K} (T'/N)^i).
Comparison compare_zero_padding(const ProblemSpec& spec, PaddingBaseline baseline);

// Rate of `plan` (possibly built for a lifted copy of `spec`) together with
// every comparator.
RateReport rate_report(const ProblemSpec& spec, const SubpacketPlan& plan);

}  // namespace sempir::params
