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

#include "sempir/serialize.hpp"

namespace sempir::serialize {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string message_label(const params::ProblemSpec& spec, std::size_t canonical) {
  return "W" + std::to_string(spec.user_index(canonical) + 1);
}

std::string label(const params::ProblemSpec& spec, SubsetMask s) {
  return subset_label(s, [&spec](std::size_t i) { return spec.user_index(i); });
}

Json elements(std::span<const gf::Element> v) {
  Json out = Json::array();
  for (auto e : v) out.push_back(str(e.value));
  return out;
}

Json colluders(const std::vector<std::uint32_t>& s) {
  Json out = Json::array();
  for (auto n : s) out.push_back(str(n + 1));
  return out;
}

}  // namespace

Json to_json(const params::ProblemSpec& spec) {
  Json j;
  j["servers"] = str(spec.servers());
  j["collusion"] = str(spec.collusion());
  j["field"] = str(spec.field().modulus());
  j["lengths"] = Json::array();
  for (auto l : spec.user_lengths()) j["lengths"].push_back(str(l));
  j["priors"] = Json::array();
  for (const auto& p : spec.user_priors()) j["priors"].push_back(to_string(p));
  return j;
}

Json to_json(const params::ProblemSpec& spec, const params::SubpacketPlan& plan) {
  Json j;
  j["alpha"] = str(plan.repetitions);
  j["downloads_per_iteration"] = str(plan.downloads);
  j["downloads"] = str(plan.repetitions * plan.downloads);
  Json messages = Json::object();
  for (std::size_t i = 0; i < plan.messages(); ++i) {
    Json m;
    m["length"] = str(spec.lengths()[i]);
    m["block_size"] = str(plan.block_sizes[i]);
    m["singletons"] = str(plan.singletons[i]);
    m["desired_per_iteration"] = str(plan.desired_per_theta[i]);
    m["unscaled"] = plan.unscaled[i].str();
    messages[message_label(spec, i)] = m;
  }
  j["messages"] = messages;
  Json ledger = Json::object();
  for (SubsetMask s : ordered_subsets(plan.messages())) {
    Rational c = params::subset_slot_count(plan.servers, plan.collusion, plan.singletons, s);
    if (c != 0) ledger[label(spec, s)] = to_string(c);
  }
  j["ledger_per_server"] = ledger;
  return j;
}

Json to_json(const params::Comparison& c) {
  Json j;
  j["name"] = c.name;
  j["condition"] = to_string(c.condition);
  j["condition_holds"] = c.condition_holds;
  j["condition_terms"] = Json::array();
  for (const auto& t : c.condition_terms) j["condition_terms"].push_back(to_string(t));
  j["semantic_rate"] = to_string(c.semantic_rate);
  j["baseline_rate"] = to_string(c.baseline_rate);
  j["verdict"] = params::to_string(c.verdict);
  return j;
}

Json to_json(const runtime::Transcript& t) {
  const auto& spec = t.spec;
  Json j;
  j["spec"] = to_json(spec);
  j["plan"] = to_json(spec, t.plan);
  j["theta"] = str(spec.user_index(t.theta) + 1);
  j["seed"] = str(t.seed);
  j["downloads"] = str(t.downloads);
  j["rate"] = to_string(t.rate);
  j["recovered"] = elements(t.recovered.symbols);
  j["iterations"] = Json::array();
  for (std::size_t a = 0; a < t.iterations.size(); ++a) {
    const auto& it = t.iterations[a];
    Json ij;
    ij["index"] = str(a);
    ij["slots"] = Json::array();
    ij["answers"] = Json::array();
    for (const auto& sq : it.queries.servers) {
      for (std::size_t p = 0; p < sq.slots.size(); ++p) {
        const auto& slot = sq.slots[p];
        Json sj;
        sj["server"] = str(sq.server + 1);
        sj["position"] = str(p);
        sj["subset"] = label(spec, slot.subset);
        Json coeffs = Json::object();
        for (const auto& term : slot.terms) coeffs[message_label(spec, term.message)] = elements(term.coefficients);
        sj["coeffs"] = coeffs;
        ij["slots"].push_back(sj);
      }
    }
    for (const auto& answers : it.answers) {
      for (auto e : answers) ij["answers"].push_back(str(e.value));
    }
    j["iterations"].push_back(ij);
  }
  return j;
}

Json to_json(const params::ProblemSpec& spec, const audit::AuditReport& report) {
  Json j;
  j["spec"] = to_json(spec);
  j["pass"] = report.pass();

  Json st;
  st["pass"] = report.structure.pass;
  st["differing_theta"] = Json::array();
  for (auto th : report.structure.differing) st["differing_theta"].push_back(str(spec.user_index(th) + 1));
  st["digest"] = Json::array();
  for (const auto& e : report.structure.reference) {
    st["digest"].push_back({{"server", str(e.server + 1)}, {"subset", label(spec, e.subset)}, {"count", str(e.count)}});
  }
  j["structure"] = st;

  Json ct;
  ct["pass"] = report.counting.pass;
  ct["tight"] = str(report.counting.tight);
  ct["entries"] = Json::array();
  for (const auto& e : report.counting.entries) {
    ct["entries"].push_back({{"theta", str(spec.user_index(e.theta) + 1)},
                             {"colluders", colluders(e.colluders)},
                             {"code", label(spec, e.members)},
                             {"level", str(e.level)},
                             {"visible", str(e.visible)},
                             {"dimension", str(e.dimension)}});
  }
  j["counting"] = ct;

  if (report.stats) {
    const auto& s = *report.stats;
    Json sj;
    sj["samples"] = str(s.samples);
    sj["significance"] = s.significance;
    sj["threshold"] = s.threshold;
    sj["rejected"] = s.rejected;
    sj["tests"] = Json::array();
    for (const auto& t : s.tests) {
      sj["tests"].push_back({{"theta_a", str(spec.user_index(t.theta_a) + 1)},
                             {"theta_b", str(spec.user_index(t.theta_b) + 1)},
                             {"colluders", colluders(t.colluders)},
                             {"projection", t.projection},
                             {"statistic", t.result.statistic},
                             {"dof", str(t.result.dof)},
                             {"categories", str(t.result.categories)},
                             {"p_value", t.result.p_value},
                             {"rejected", t.rejected}});
    }
    j["stats"] = sj;
  }
  return j;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace sempir::serialize
