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

#include "sempir/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sempir/audit.hpp"
#include "sempir/error.hpp"
#include "sempir/params.hpp"
#include "sempir/random.hpp"
#include "sempir/runtime.hpp"
#include "sempir/serialize.hpp"

namespace sempir::cli {

namespace {

struct RunConfig {
  std::optional<std::uint32_t> servers;
  std::optional<std::uint32_t> collusion;
  std::string lengths;
  std::string priors;
  std::optional<std::uint32_t> theta;  // 1-based, caller order
  std::uint64_t seed = 1;
  std::optional<std::uint32_t> field;
  bool lift = false;
  bool stats = false;
  bool json = false;
  std::uint64_t samples = 5000;
  double significance = 0.01;
  std::uint64_t sessions = 1;
  std::string out_path;
  std::optional<std::string> mutant;
  std::string config;
};

const std::set<std::string> kFlagKeys = {"lift", "stats", "json"};
const std::set<std::string> kValueKeys = {"servers", "collusion", "lengths",      "priors",   "theta", "seed",
                                          "field",   "samples",   "significance", "sessions", "out",   "mutant"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidSpec("config key '" + key + "' expects true or false, got '" + v + "'");
}

// Flat key=value file turned into command-line arguments.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot read config file " + path);
  std::vector<std::string> args;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw InvalidSpec(path + ":" + std::to_string(number) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (kFlagKeys.count(key)) {
      if (parse_bool(key, value)) args.push_back("--" + key);
    } else if (key == "mutant" && value.empty()) {
      args.push_back("--mutant");
    } else if (kValueKeys.count(key)) {
      args.push_back("--" + key);
      args.push_back(value);
    } else {
      throw InvalidSpec(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
  return args;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  return out;
}

std::vector<std::uint64_t> parse_lengths(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(text)) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InvalidSpec("bad length '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::string fmt(double x, const char* format) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::string with_decimal(const Rational& r) { return to_string(r) + " ~ " + to_decimal(r, 4); }

std::string label(const params::ProblemSpec& spec, std::size_t canonical) {
  return "W" + std::to_string(spec.user_index(canonical) + 1);
}

std::string label(const params::ProblemSpec& spec, SubsetMask s) {
  return subset_label(s, [&spec](std::size_t i) { return spec.user_index(i); });
}

params::ProblemSpec make_spec(const RunConfig& c, bool need_priors) {
  if (!c.servers) throw InvalidSpec("missing --servers");
  if (!c.collusion) throw InvalidSpec("missing --collusion");
  if (c.lengths.empty()) throw InvalidSpec("missing --lengths");
  if (need_priors && c.priors.empty()) throw InvalidSpec("missing --priors");
  std::vector<Rational> priors;
  if (!c.priors.empty()) {
    for (const auto& item : split(c.priors)) priors.push_back(parse_rational(item));
  }
  gf::Field field(c.field.value_or(gf::Field::kDefaultModulus));
  return params::ProblemSpec(*c.servers, *c.collusion, parse_lengths(c.lengths), std::move(priors), field);
}

struct Prepared {
  params::ProblemSpec spec;
  params::SubpacketPlan plan;
  std::uint64_t lift;
};

Prepared prepare(const params::ProblemSpec& spec, bool lift) {
  try {
    return {spec, params::compute_plan(spec), 1};
  } catch (const InfeasiblePlan& e) {
    if (!lift) {
      // Report entries in caller order.
      auto entries = e.offending();
      for (auto& o : entries) o.index = spec.user_index(o.index);
      throw InfeasiblePlan(e.what(), std::move(entries), e.lift_factor());
    }
  }
  params::Lift l = params::feasibility_lift(spec);
  return {l.spec, params::compute_plan(l.spec), l.factor};
}

std::size_t canonical_theta(const params::ProblemSpec& spec, std::uint32_t theta) {
  if (theta < 1 || theta > spec.messages()) {
    throw InvalidSpec("--theta must be in 1.." + std::to_string(spec.messages()));
  }
  return spec.canonical_index(theta - 1);
}

scheme::BuildOptions build_options(const RunConfig& c) {
  scheme::BuildOptions o;
  if (c.mutant) o.mutant = scheme::parse_mutant(c.mutant->empty() ? "extra_desired_singleton" : *c.mutant);
  return o;
}

void emit(const RunConfig& c, const serialize::Json& doc, std::ostream& out) {
  if (c.json) out << serialize::dump(doc);
  if (!c.out_path.empty()) {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw InvalidSpec("cannot write " + c.out_path);
    f << serialize::dump(doc);
  }
}

std::string spec_line(const params::ProblemSpec& spec) {
  std::vector<std::string> lengths;
  for (auto l : spec.user_lengths()) lengths.push_back(std::to_string(l));
  std::vector<std::string> priors;
  for (const auto& p : spec.user_priors()) priors.push_back(to_string(p));
  return "N = " + std::to_string(spec.servers()) + ", T = " + std::to_string(spec.collusion()) +
         ", K = " + std::to_string(spec.messages()) + ", lengths = " + join(lengths) + ", priors = " + join(priors) +
         ", field = " + std::to_string(spec.field().modulus());
}

int cmd_capacity(const RunConfig& c, std::ostream& out) {
  const params::ProblemSpec spec = make_spec(c, true);
  const Rational el = params::expected_length(spec);
  const Rational bound = params::converse_bound(spec);
  const Rational cap = params::capacity(spec);
  Prepared p = prepare(spec, true);
  const Rational total = Rational(p.plan.repetitions * p.plan.downloads);

  serialize::Json doc;
  doc["spec"] = serialize::to_json(spec);
  doc["expected_length"] = to_string(el);
  doc["converse_bound"] = to_string(bound);
  doc["capacity"] = to_string(cap);
  doc["capacity_decimal"] = to_decimal(cap, 4);
  doc["lift"] = std::to_string(p.lift);
  doc["alpha"] = std::to_string(p.plan.repetitions);
  doc["downloads"] = to_string(total);
  emit(c, doc, out);
  if (c.json) return kOk;

  const std::string b = is_integer(bound) ? to_string(bound) : "(" + to_string(bound) + ")";
  out << "spec: " << spec_line(spec) << "\n";
  out << "expected length E[L] = " << with_decimal(el) << "\n";
  out << "converse bound = " << to_string(bound) << "\n";
  out << "capacity = E[L]/" << b << " = " << with_decimal(cap) << "\n";
  out << "alpha * D = " << to_string(total);
  if (p.lift == 1) {
    out << " = converse bound\n";
  } else {
    out << " = " << p.lift << " * converse bound (lengths lifted by " << p.lift << ")\n";
  }
  return kOk;
}

int cmd_plan(const RunConfig& c, std::ostream& out) {
  Prepared p = prepare(make_spec(c, false), c.lift);
  const auto& spec = p.spec;
  const auto& plan = p.plan;

  serialize::Json doc = serialize::to_json(spec, plan);
  doc["spec"] = serialize::to_json(spec);
  doc["lift"] = std::to_string(p.lift);
  emit(c, doc, out);
  if (c.json) return kOk;

  out << "spec: " << spec_line(spec) << "\n";
  out << "lift = " << p.lift << "\n";
  out << "alpha = " << plan.repetitions << "\n";
  out << "downloads per iteration D = " << plan.downloads << "\n";
  out << "total downloads alpha*D = " << plan.repetitions * plan.downloads << "\n";
  out << "message length U nu U_theta\n";
  for (std::size_t i = 0; i < plan.messages(); ++i) {
    out << label(spec, i) << " " << spec.lengths()[i] << " " << plan.block_sizes[i] << " " << plan.singletons[i]
        << " " << plan.desired_per_theta[i] << "\n";
  }
  out << "per-server ledger:\n";
  for (SubsetMask s : ordered_subsets(plan.messages())) {
    Rational n = params::subset_slot_count(plan.servers, plan.collusion, plan.singletons, s);
    if (n != 0) out << "  " << label(spec, s) << " " << to_string(n) << "\n";
  }
  return kOk;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  const params::ProblemSpec spec = make_spec(c, true);
  const Rational cap = params::capacity(spec);
  const Rational sem_pir =
      params::expected_length(spec) / params::weighted_download(spec.servers(), 1, spec.lengths());
  std::vector<params::Comparison> cs = {params::compare_tpir(spec),
                                        params::compare_zero_padding(spec, params::PaddingBaseline::tpir),
                                        params::compare_pir(spec),
                                        params::compare_zero_padding(spec, params::PaddingBaseline::pir)};

  serialize::Json doc;
  doc["spec"] = serialize::to_json(spec);
  doc["rates"] = {{"semantic_tpir_capacity", to_string(cap)},
                  {"semantic_pir_capacity", to_string(sem_pir)},
                  {"tpir_capacity", to_string(cs[0].baseline_rate)},
                  {"zero_padding_tpir", to_string(cs[1].baseline_rate)},
                  {"pir_capacity", to_string(cs[2].baseline_rate)},
                  {"zero_padding_pir", to_string(cs[3].baseline_rate)}};
  doc["comparisons"] = serialize::Json::array();
  for (const auto& x : cs) doc["comparisons"].push_back(serialize::to_json(x));
  emit(c, doc, out);
  if (c.json) return kOk;

  out << "spec: " << spec_line(spec) << "\n";
  out << "rates:\n";
  out << "  semantic_tpir_capacity = " << with_decimal(cap) << "\n";
  out << "  semantic_pir_capacity = " << with_decimal(sem_pir) << "\n";
  out << "  tpir_capacity = " << with_decimal(cs[0].baseline_rate) << "\n";
  out << "  zero_padding_tpir = " << with_decimal(cs[1].baseline_rate) << "\n";
  out << "  pir_capacity = " << with_decimal(cs[2].baseline_rate) << "\n";
  out << "  zero_padding_pir = " << with_decimal(cs[3].baseline_rate) << "\n";
  out << "comparisons:\n";
  for (const auto& x : cs) {
    out << "  " << x.name << ": condition = " << to_string(x.condition);
    if (!x.condition_terms.empty()) {
      std::vector<std::string> terms;
      for (const auto& t : x.condition_terms) terms.push_back(to_string(t));
      out << " (terms " << join(terms) << ")";
    }
    out << ", holds = " << (x.condition_holds ? "true" : "false") << ", semantic rate is "
        << params::to_string(x.verdict) << "\n";
  }
  return kOk;
}

std::size_t sample_theta(const params::ProblemSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  // 53-bit uniform in [0, 1); the tiny discretisation is irrelevant for priors.
  const double u = static_cast<double>(rng.uniform(std::uint64_t{1} << 53)) / static_cast<double>(std::uint64_t{1} << 53);
  double acc = 0;
  for (std::size_t i = 0; i < spec.messages(); ++i) {
    acc += spec.priors()[i].convert_to<double>();
    if (u < acc) return i;
  }
  return spec.messages() - 1;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  params::ProblemSpec user_spec = make_spec(c, false);
  if (!c.theta && !user_spec.has_priors()) throw InvalidSpec("simulate needs --theta or --priors");
  if (c.sessions == 0) throw InvalidSpec("--sessions must be positive");
  if (c.sessions > 1 && !c.out_path.empty()) throw InvalidSpec("--out writes one transcript; use --sessions 1");
  Prepared p = prepare(user_spec, c.lift);
  const auto& spec = p.spec;
  runtime::SessionOptions options;
  options.build = build_options(c);
  options.keep_queries = !c.out_path.empty();

  if (c.sessions == 1) {
    const std::size_t theta = c.theta ? canonical_theta(spec, *c.theta) : sample_theta(spec, derive_seed(c.seed, "theta", 0));
    runtime::Transcript t = runtime::run_session(spec, theta, c.seed, options);
    if (!c.out_path.empty()) {
      std::ofstream f(c.out_path, std::ios::binary);
      if (!f) throw InvalidSpec("cannot write " + c.out_path);
      f << serialize::dump(serialize::to_json(t));
    }
    if (c.json) {
      out << serialize::dump({{"theta", std::to_string(spec.user_index(theta) + 1)},
                              {"seed", std::to_string(c.seed)},
                              {"lift", std::to_string(p.lift)},
                              {"downloads", std::to_string(t.downloads)},
                              {"rate", to_string(t.rate)},
                              {"recovered", std::to_string(t.recovered.symbols.size())}});
      return kOk;
    }
    out << "theta = " << label(spec, theta) << "\n";
    out << "seed = " << c.seed << "\n";
    if (p.lift != 1) out << "lift = " << p.lift << "\n";
    out << "alpha = " << t.plan.repetitions << "\n";
    out << "downloads = " << t.downloads << "\n";
    out << "rate = " << with_decimal(t.rate) << "\n";
    out << "recovery = exact (" << t.recovered.symbols.size() << " symbols)\n";
    return kOk;
  }

  Rational sum = 0;
  std::vector<std::uint64_t> picks(spec.messages(), 0);
  std::uint64_t downloads = 0;
  for (std::uint64_t s = 0; s < c.sessions; ++s) {
    const std::uint64_t seed = derive_seed(c.seed, "session", s);
    const std::size_t theta = c.theta ? canonical_theta(spec, *c.theta) : sample_theta(spec, derive_seed(c.seed, "theta", s));
    options.keep_queries = false;
    runtime::Transcript t = runtime::run_session(spec, theta, seed, options);
    sum += t.rate;
    downloads = t.downloads;
    ++picks[theta];
  }
  const Rational mean = sum / c.sessions;
  const Rational cap = params::capacity(spec);
  const double rel = std::abs((mean - cap).convert_to<double>() / cap.convert_to<double>());
  if (c.json) {
    serialize::Json counts = serialize::Json::object();
    for (std::size_t i = 0; i < picks.size(); ++i) counts[label(spec, i)] = std::to_string(picks[i]);
    out << serialize::dump({{"sessions", std::to_string(c.sessions)},
                            {"seed", std::to_string(c.seed)},
                            {"downloads_per_session", std::to_string(downloads)},
                            {"mean_rate", to_string(mean)},
                            {"capacity", to_string(cap)},
                            {"relative_difference", rel},
                            {"theta_counts", counts}});
    return kOk;
  }
  out << "sessions = " << c.sessions << "\n";
  out << "theta = " << (c.theta ? label(spec, canonical_theta(spec, *c.theta)) : std::string("sampled from priors"))
      << "\n";
  out << "downloads per session = " << downloads << "\n";
  out << "mean rate = " << with_decimal(mean) << "\n";
  out << "capacity = " << with_decimal(cap) << "\n";
  out << "relative difference = " << fmt(rel, "%.6f") << "\n";
  out << "recovery = exact in " << c.sessions << " of " << c.sessions << " sessions\n";
  return kOk;
}

int cmd_audit(const RunConfig& c, std::ostream& out) {
  params::ProblemSpec user_spec = [&] {
    if (!c.servers && !c.collusion && c.lengths.empty()) {
      auto d = audit::default_stat_instance();
      if (!c.field) return d;
      return params::ProblemSpec(d.servers(), d.collusion(), d.user_lengths(), {}, gf::Field(*c.field));
    }
    return make_spec(c, false);
  }();
  Prepared p = prepare(user_spec, c.lift);
  const auto& spec = p.spec;
  const scheme::BuildOptions build = build_options(c);
  std::optional<audit::StatOptions> so;
  if (c.stats) {
    so.emplace();
    so->samples = c.samples;
    so->significance = c.significance;
    so->seed = c.seed;
  }
  audit::AuditReport report = audit::run_audit(spec, c.seed, build, so);
  emit(c, serialize::to_json(spec, report), out);
  const int code = report.pass() ? kOk : kAuditFailure;
  if (c.json) return code;

  auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
  out << "spec: " << spec_line(spec) << "\n";
  if (build.mutant != scheme::Mutant::none) out << "mutant = " << scheme::to_string(build.mutant) << "\n";
  out << "structure: " << verdict(report.structure.pass);
  if (report.structure.pass) {
    out << " (one query shape for all " << spec.messages() << " values of theta)\n";
  } else {
    std::vector<std::string> th;
    for (auto t : report.structure.differing) th.push_back(label(spec, t));
    out << " (shape differs for theta " << join(th) << ")\n";
  }
  const auto sets = audit::colluding_sets(spec.servers(), spec.collusion());
  out << "counting: " << verdict(report.counting.pass) << " (" << report.counting.entries.size() << " entries, "
      << report.counting.tight << " tight)\n";
  for (const auto& e : report.counting.entries) {
    if (e.colluders != sets.front()) continue;
    out << "  theta " << label(spec, e.theta) << ", code " << label(spec, e.members) << ": " << e.visible << " of "
        << e.dimension << " visible" << (e.tight() ? " (tight)" : "") << "\n";
  }
  if (report.stats) {
    const auto& s = *report.stats;
    double minp = 1;
    for (const auto& t : s.tests) minp = std::min(minp, t.result.p_value);
    out << "stats: " << verdict(!s.rejected) << " (" << s.tests.size() << " tests, M = " << s.samples
        << ", threshold = " << fmt(s.threshold, "%.3e") << ", smallest p = " << fmt(minp, "%.3e") << ")\n";
    int shown = 0;
    for (const auto& t : s.tests) {
      if (!t.rejected || shown++ == 5) continue;
      out << "  rejected: theta " << label(spec, t.theta_a) << " vs " << label(spec, t.theta_b) << ", "
          << t.projection << ", p = " << fmt(t.result.p_value, "%.3e") << "\n";
    }
  }
  out << "audit: " << verdict(report.pass()) << "\n";
  return code;
}

void add_options(CLI::App* sub, RunConfig& c, const std::string& name) {
  sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--servers", c.servers, "number of servers N");
  sub->add_option("--collusion", c.collusion, "collusion parameter T");
  sub->add_option("--lengths", c.lengths, "comma-separated message lengths");
  sub->add_option("--priors", c.priors, "comma-separated priors, e.g. 1/2,1/3,1/6");
  sub->add_option("--field", c.field, "prime field modulus");
  sub->add_option("--out", c.out_path, "write the structured document to this path");
  sub->add_flag("--json", c.json, "print the structured document instead of text");
  sub->add_option("--config", c.config, "flat key=value file; flags override it");
  if (name == "plan" || name == "simulate" || name == "audit") {
    sub->add_flag("--lift", c.lift, "scale lengths to the smallest feasible multiple");
  }
  if (name == "simulate" || name == "audit") {
    sub->add_option("--seed", c.seed, "session seed");
    sub->add_option("--mutant", c.mutant, "test hook: none, extra_desired_singleton, raw_interference")
        ->expected(0, 1);
  }
  if (name == "simulate") {
    sub->add_option("--theta", c.theta, "desired message, 1-based; sampled from priors when omitted");
    sub->add_option("--sessions", c.sessions, "number of sessions");
  }
  if (name == "audit") {
    sub->add_flag("--stats", c.stats, "run the statistical privacy test");
    sub->add_option("--samples", c.samples, "sessions per theta for --stats");
    sub->add_option("--significance", c.significance, "family-wise significance for --stats");
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Semantic private information retrieval with colluding servers", "sempir"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"capacity", "exact capacity and converse bound"},
      {"plan", "sub-packetization, download counts and per-server ledger"},
      {"simulate", "run retrieval sessions against simulated servers"},
      {"compare", "rates against equal-length and zero-padding baselines"},
      {"audit", "structural, counting and statistical privacy checks"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    subs[name] = app.add_subcommand(name, help);
    add_options(subs[name], c, name);
  }

  try {
    std::vector<std::string> args(argv, argv + argc);
    // Config values go first so explicit flags win.
    std::string config;
    for (std::size_t i = 2; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
    }
    if (!config.empty() && args.size() > 1) {
      auto extra = config_arguments(config);
      args.insert(args.begin() + 2, extra.begin(), extra.end());
    }
    std::vector<const char*> ptrs;
    for (const auto& a : args) ptrs.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kInvalidSpec;
    }

    if (subs["capacity"]->parsed()) return cmd_capacity(c, out);
    if (subs["plan"]->parsed()) return cmd_plan(c, out);
    if (subs["simulate"]->parsed()) return cmd_simulate(c, out);
    if (subs["compare"]->parsed()) return cmd_compare(c, out);
    if (subs["audit"]->parsed()) return cmd_audit(c, out);
    return kInvalidSpec;
  } catch (const InfeasiblePlan& e) {
    err << "error: infeasible plan: V^-1 L or an s-sum count is fractional";
    for (const auto& o : e.offending()) err << "; W" << o.index + 1 << " = " << o.value;
    err << "; lift factor " << e.lift_factor();
    err << "\nrerun with --lift (lambda = " << e.lift_factor() << ")\n";
    return kInfeasible;
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidSpec;
  } catch (const FieldTooSmall& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidSpec;
  } catch (const InsufficientSamples& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidSpec;
  } catch (const IntegrityError& e) {
    err << "error: decoding failed: " << e.what() << "\n";
    return kDecodeFailure;
  } catch (const InsufficientData& e) {
    err << "error: decoding failed: " << e.what() << "\n";
    return kDecodeFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace sempir::cli
