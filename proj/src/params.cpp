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

#include "sempir/params.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sempir/error.hpp"

namespace sempir::params {

using sempir::to_string;

namespace {

Rational ratio_power(std::uint32_t num, std::uint32_t den, std::size_t e) {
  BigInt n = 1;
  BigInt d = 1;
  for (std::size_t i = 0; i < e; ++i) {
    n *= num;
    d *= den;
  }
  return Rational(n, d);
}

BigInt int_power(std::uint64_t base, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

Verdict compare_rates(const Rational& semantic, const Rational& baseline) {
  if (semantic > baseline) return Verdict::higher;
  if (semantic < baseline) return Verdict::lower;
  return Verdict::equal;
}

std::vector<std::uint64_t> divisors_descending(std::uint64_t g) {
  std::vector<std::uint64_t> small;
  std::vector<std::uint64_t> large;
  for (std::uint64_t d = 1; d * d <= g; ++d) {
    if (g % d != 0) continue;
    small.push_back(d);
    if (d * d != g) large.push_back(g / d);
  }
  std::vector<std::uint64_t> out(large.begin(), large.end());
  out.insert(out.end(), small.rbegin(), small.rend());
  return out;
}

// Every s-sum count is integral iff ((N-T)/T)^(s-1) nu_i is an integer for
// each i and each s up to 1 + #{j != i : nu_j >= nu_i}.
bool slot_counts_integral(std::uint32_t n, std::uint32_t t, std::span<const std::uint64_t> nu,
                          std::vector<InfeasiblePlan::Entry>* offending) {
  bool ok = true;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    std::size_t reach = 1;
    for (std::size_t j = 0; j < nu.size(); ++j) {
      if (j != i && nu[j] >= nu[i]) ++reach;
    }
    for (std::size_t s = 1; s <= reach; ++s) {
      Rational c = ratio_power(n - t, t, s - 1) * Rational(BigInt(nu[i]));
      if (!is_integer(c)) {
        ok = false;
        if (offending) offending->push_back({i, "level " + std::to_string(s) + ": " + to_string(c)});
        break;
      }
    }
  }
  return ok;
}

std::optional<SubpacketPlan> try_plan(const ProblemSpec& spec, std::vector<InfeasiblePlan::Entry>* offending) {
  const std::uint32_t n = spec.servers();
  const std::uint32_t t = spec.collusion();
  const std::size_t k = spec.messages();
  const std::vector<Rational> m = unscaled_solution(spec);

  bool integral = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (m[i] < 0) {
      throw IntegrityError("negative V^-1 L entry " + to_string(m[i]) + " for non-increasing lengths");
    }
    if (!is_integer(m[i])) {
      integral = false;
      if (offending) offending->push_back({i, to_string(m[i])});
    }
  }
  if (!integral) return std::nullopt;

  BigInt g = 0;
  for (auto l : spec.lengths()) g = gcd(g, BigInt(l));
  for (const auto& v : m) g = gcd(g, numerator(v));

  // The largest common divisor leaves the fewest repetitions; step down only
  // when it would make some s-sum count fractional.
  for (std::uint64_t alpha : divisors_descending(to_u64(g))) {
    std::vector<std::uint64_t> nu(k);
    for (std::size_t i = 0; i < k; ++i) nu[i] = to_u64(BigInt(numerator(m[i]) / alpha));
    const bool last = alpha == 1;
    if (!slot_counts_integral(n, t, nu, last ? offending : nullptr)) continue;

    SubpacketPlan plan;
    plan.servers = n;
    plan.collusion = t;
    plan.field = spec.field();
    plan.repetitions = alpha;
    plan.singletons = nu;
    for (std::size_t i = 0; i < k; ++i) {
      plan.block_sizes.push_back(spec.lengths()[i] / alpha);
      plan.unscaled.push_back(numerator(m[i]));
    }
    Rational d = 0;
    for (std::size_t i = 0; i < k; ++i) {
      d += Rational(int_power(n, i + 1), int_power(t, i)) * Rational(BigInt(nu[i]));
    }
    plan.downloads = to_u64(d);
    for (std::size_t theta = 0; theta < k; ++theta) {
      plan.desired_per_theta.push_back(to_u64(desired_symbols(n, t, nu, theta)));
    }
    return plan;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::higher:
      return "higher";
    case Verdict::equal:
      return "equal";
    case Verdict::lower:
      return "lower";
  }
  return "?";
}

ProblemSpec::ProblemSpec(std::uint32_t servers, std::uint32_t collusion, std::vector<std::uint64_t> lengths,
                         std::vector<Rational> priors, gf::Field field)
    : servers_(servers), collusion_(collusion), has_priors_(!priors.empty()), field_(field) {
  if (collusion < 1 || collusion >= servers) {
    throw InvalidSpec("collusion must satisfy 1 <= T < N, got N=" + std::to_string(servers) +
                      " T=" + std::to_string(collusion));
  }
  const std::size_t k = lengths.size();
  if (k == 0) throw InvalidSpec("at least one message is required");
  if (k > kMaxMessages) throw InvalidSpec("at most " + std::to_string(kMaxMessages) + " messages are supported");
  for (auto l : lengths) {
    if (l == 0) throw InvalidSpec("message lengths must be positive");
  }
  if (priors.empty()) priors.assign(k, Rational(1, static_cast<long>(k)));
  if (priors.size() != k) {
    throw InvalidSpec("got " + std::to_string(priors.size()) + " priors for " + std::to_string(k) + " messages");
  }
  Rational total = 0;
  for (const auto& p : priors) {
    if (p <= 0) throw InvalidSpec("priors must be positive, got " + sempir::to_string(p));
    total += p;
  }
  if (total != 1) throw InvalidSpec("priors must sum to 1, got " + sempir::to_string(total));

  order_.resize(k);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::ranges::stable_sort(order_, [&](std::size_t a, std::size_t b) { return lengths[a] > lengths[b]; });
  for (auto u : order_) {
    lengths_.push_back(lengths[u]);
    priors_.push_back(priors[u]);
  }
}

std::size_t ProblemSpec::canonical_index(std::size_t user) const {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (order_[i] == user) return i;
  }
  throw InvalidSpec("message index " + std::to_string(user + 1) + " out of range");
}

std::vector<std::uint64_t> ProblemSpec::user_lengths() const {
  std::vector<std::uint64_t> out(lengths_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) out[order_[i]] = lengths_[i];
  return out;
}

std::vector<Rational> ProblemSpec::user_priors() const {
  std::vector<Rational> out(priors_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) out[order_[i]] = priors_[i];
  return out;
}

ProblemSpec ProblemSpec::scaled(std::uint64_t factor) const {
  std::vector<std::uint64_t> lengths = user_lengths();
  for (auto& l : lengths) l = to_u64(BigInt(l) * factor);
  return ProblemSpec(servers_, collusion_, std::move(lengths), has_priors_ ? user_priors() : std::vector<Rational>{},
                     field_);
}

Rational expected_length(const ProblemSpec& spec) {
  Rational e = 0;
  for (std::size_t i = 0; i < spec.messages(); ++i) e += spec.priors()[i] * Rational(BigInt(spec.lengths()[i]));
  return e;
}

Rational weighted_download(std::uint32_t servers, std::uint32_t collusion, std::span<const std::uint64_t> lengths) {
  Rational total = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    total += ratio_power(collusion, servers, i) * Rational(BigInt(lengths[i]));
  }
  return total;
}

Rational capacity(const ProblemSpec& spec) {
  return expected_length(spec) / weighted_download(spec.servers(), spec.collusion(), spec.lengths());
}

Rational converse_bound(const ProblemSpec& spec) {
  // Weights (T/N)^(j-1) decrease in j, so pairing them with non-increasing
  // lengths maximizes the sum (rearrangement inequality).
  return weighted_download(spec.servers(), spec.collusion(), spec.lengths());
}

VMatrices build_v_matrix(const ProblemSpec& spec) {
  const std::uint32_t n = spec.servers();
  const std::uint32_t t = spec.collusion();
  const std::size_t k = spec.messages();
  VMatrices out{RationalMatrix(k, std::vector<Rational>(k)), RationalMatrix(k, std::vector<Rational>(k))};
  for (std::size_t i = 0; i < k; ++i) {
    // 0-based: V[i][i] = N^(i+1)/T^i, V[i][j] = (N-T) N^j/T^j for j > i.
    out.v[i][i] = Rational(int_power(n, i + 1), int_power(t, i));
    for (std::size_t j = i + 1; j < k; ++j) out.v[i][j] = Rational(BigInt(n - t)) * ratio_power(n, t, j);
    // V^-1[i][i] = T^i/N^(i+1), V^-1[i][j] = -(N-T) T^(j-1)/N^(j+1) for j > i.
    out.v_inv[i][i] = Rational(int_power(t, i), int_power(n, i + 1));
    for (std::size_t j = i + 1; j < k; ++j) {
      out.v_inv[i][j] = -Rational(BigInt(n - t) * int_power(t, j - 1), int_power(n, j + 1));
    }
  }
  return out;
}

std::vector<Rational> unscaled_solution(const ProblemSpec& spec) {
  const auto vm = build_v_matrix(spec);
  const std::size_t k = spec.messages();
  std::vector<Rational> m(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) m[i] += vm.v_inv[i][j] * Rational(BigInt(spec.lengths()[j]));
  }
  return m;
}

Rational subset_slot_count(std::uint32_t servers, std::uint32_t collusion, std::span<const std::uint64_t> singletons,
                           SubsetMask subset) {
  std::uint64_t low = std::numeric_limits<std::uint64_t>::max();
  for (auto i : subset_members(subset)) low = std::min(low, singletons[i]);
  return ratio_power(servers - collusion, collusion, subset_size(subset) - 1) * Rational(BigInt(low));
}

BigInt desired_symbols(std::uint32_t servers, std::uint32_t collusion, std::span<const std::uint64_t> singletons,
                       std::size_t theta) {
  Rational u = Rational(int_power(servers, theta + 1), int_power(collusion, theta)) *
               Rational(BigInt(singletons[theta]));
  for (std::size_t i = theta + 1; i < singletons.size(); ++i) {
    u += Rational(BigInt(servers - collusion)) * ratio_power(servers, collusion, i) *
         Rational(BigInt(singletons[i]));
  }
  if (!is_integer(u)) throw IntegrityError("fractional desired-symbol count " + to_string(u));
  return numerator(u);
}

SubpacketPlan compute_plan(const ProblemSpec& spec) {
  std::vector<InfeasiblePlan::Entry> offending;
  if (auto plan = try_plan(spec, &offending)) return *std::move(plan);
  const Lift lift = feasibility_lift(spec);
  std::string what = "infeasible plan: V^-1 L or an s-sum count is fractional (";
  for (std::size_t i = 0; i < offending.size(); ++i) {
    what += (i ? ", " : "") + std::string("message ") + std::to_string(spec.user_index(offending[i].index) + 1) +
            " -> " + offending[i].value;
  }
  what += "); lift factor " + std::to_string(lift.factor);
  throw InfeasiblePlan(what, std::move(offending), lift.factor);
}

Lift feasibility_lift(const ProblemSpec& spec) {
  BigInt base = 1;
  for (const auto& v : unscaled_solution(spec)) base = lcm(base, denominator(v));
  const std::uint64_t step = to_u64(base);
  // Scaling by multiples of `step` keeps V^-1 L integral; a further factor is
  // needed only when some s-sum count stays fractional.
  constexpr std::uint64_t kMaxMultiple = 1u << 20;
  for (std::uint64_t mult = 1; mult <= kMaxMultiple; ++mult) {
    const std::uint64_t factor = to_u64(BigInt(step) * mult);
    ProblemSpec scaled = factor == 1 ? spec : spec.scaled(factor);
    if (try_plan(scaled, nullptr)) return Lift{std::move(scaled), factor};
  }
  throw IntegrityError("no feasible lift found");
}

Comparison compare_tpir(const ProblemSpec& spec) {
  const std::size_t k = spec.messages();
  const Rational el = expected_length(spec);
  Comparison c;
  c.name = "tpir";
  Rational geometric = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Rational w = ratio_power(spec.collusion(), spec.servers(), i);
    c.condition += (Rational(BigInt(spec.lengths()[i])) - el) * w;
    geometric += w;
  }
  c.condition_holds = c.condition <= 0;
  c.semantic_rate = capacity(spec);
  c.baseline_rate = 1 / geometric;
  c.verdict = compare_rates(c.semantic_rate, c.baseline_rate);
  return c;
}

Comparison compare_pir(const ProblemSpec& spec) {
  const std::size_t k = spec.messages();
  const Rational el = expected_length(spec);
  Comparison c;
  c.name = "pir";
  Rational geometric = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Rational w = ratio_power(1, spec.servers(), i);
    c.condition += (el - Rational(int_power(spec.collusion(), i) * spec.lengths()[i])) * w;
    geometric += w;
  }
  c.condition_holds = c.condition >= 0;
  c.semantic_rate = capacity(spec);
  c.baseline_rate = 1 / geometric;
  c.verdict = compare_rates(c.semantic_rate, c.baseline_rate);
  return c;
}

Comparison compare_zero_padding(const ProblemSpec& spec, PaddingBaseline baseline) {
  const std::size_t k = spec.messages();
  const std::uint32_t padding_collusion = baseline == PaddingBaseline::tpir ? spec.collusion() : 1;
  const Rational longest = Rational(BigInt(spec.lengths().front()));
  Comparison c;
  Rational geometric = 0;
  for (std::size_t i = 0; i < k; ++i) geometric += ratio_power(padding_collusion, spec.servers(), i);
  c.semantic_rate = capacity(spec);
  c.baseline_rate = expected_length(spec) / (longest * geometric);
  if (baseline == PaddingBaseline::tpir) {
    c.name = "zero_padding_tpir";
    c.condition = longest * geometric - weighted_download(spec.servers(), spec.collusion(), spec.lengths());
    c.condition_holds = c.condition >= 0;
  } else {
    c.name = "zero_padding_pir";
    c.condition_holds = true;
    for (std::size_t i = 1; i < k; ++i) {
      const Rational margin = longest - Rational(int_power(spec.collusion(), i) * spec.lengths()[i]);
      c.condition_terms.push_back(margin);
      c.condition_holds = c.condition_holds && margin > 0;
    }
    c.condition = c.condition_terms.empty() ? Rational(0) : *std::ranges::min_element(c.condition_terms);
  }
  c.verdict = compare_rates(c.semantic_rate, c.baseline_rate);
  return c;
}

RateReport rate_report(const ProblemSpec& spec, const SubpacketPlan& plan) {
  if (plan.messages() != spec.messages()) throw DimensionMismatch("plan and spec disagree on message count");
  RateReport r;
  Rational per_iteration = 0;
  for (std::size_t i = 0; i < spec.messages(); ++i) per_iteration += spec.priors()[i] * Rational(BigInt(plan.block_sizes[i]));
  r.rate = per_iteration / Rational(BigInt(plan.downloads));
  r.capacity = capacity(spec);
  r.semantic_pir_capacity = expected_length(spec) / weighted_download(spec.servers(), 1, spec.lengths());
  r.comparisons = {compare_tpir(spec), compare_zero_padding(spec, PaddingBaseline::tpir), compare_pir(spec),
                   compare_zero_padding(spec, PaddingBaseline::pir)};
  return r;
}

}  // namespace sempir::params
