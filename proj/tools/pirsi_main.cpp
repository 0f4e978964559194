// Copyright 2026 The pirsi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: rate tables, privacy/recoverability audits,
// Monte-Carlo experiments, and the fixed worked example, with text, JSON
// and CSV output.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pirsi/analysis.hpp"
#include "pirsi/errors.hpp"
#include "pirsi/oracle.hpp"
#include "pirsi/scheme.hpp"
#include "pirsi/simnet.hpp"

using nlohmann::json;
using namespace pirsi;

namespace {

constexpr const char* kFormats[] = {"text", "json", "csv"};

std::string fraction(const Rat& r) { return r.to_string(); }

std::string fraction_decimal(const Rat& r) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", r.to_double());
  return r.to_string() + " (" + buffer + ")";
}

std::string pad(std::string s, std::size_t width) {
  while (s.size() < width) s.push_back(' ');
  return s;
}

enum class CheckState { kPass, kFail, kSkip };

struct CheckResult {
  std::string name;
  CheckState state;
  std::string detail;
};

json params_json(const Params& p) {
  return json{{"N", p.servers()},
              {"K", p.messages()},
              {"M", p.side_info_count()},
              {"L", p.subpackets()},
              {"q", p.field_order()}};
}

json checks_json(const std::vector<CheckResult>& checks) {
  json out = json::array();
  for (const CheckResult& c : checks) {
    json entry{{"name", c.name}, {"detail", c.detail}};
    if (c.state == CheckState::kSkip) {
      entry["pass"] = nullptr;
    } else {
      entry["pass"] = c.state == CheckState::kPass;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

// The shared report body: {params, g, P, R, Rstar, relation, checks}.
json cell_json(const Params& p, const std::vector<CheckResult>& checks) {
  const auto dist = analysis::compute_distribution(p);
  const auto cmp = analysis::compare_rates(p);
  json out;
  out["params"] = params_json(p);
  out["g"] = p.groups();
  json probs = json::array();
  for (const Rat& pk : dist.p) probs.push_back(fraction(pk));
  out["P"] = std::move(probs);
  out["R"] = fraction(cmp.r);
  out["Rstar"] = fraction(cmp.rstar);
  out["relation"] = cmp.relation == analysis::RateRelation::kEqual
                        ? "equal"
                        : "strictly_greater";
  out["divisible"] = p.divisible();
  out["expected_download_symbols"] =
      fraction(analysis::rate_report(p).expected_download_symbols);
  if (p.subpackets() != p.servers() - 1) {
    out["RL"] = fraction(analysis::rate_RL(p));
  }
  out["checks"] = checks_json(checks);
  return out;
}

struct SweepRange {
  unsigned lo = 0, hi = 0;
};

// "N=2..5,K=2..8,M=1..3"; single values allowed ("N=3").
std::map<std::string, SweepRange> parse_sweep(const std::string& text) {
  std::map<std::string, SweepRange> out;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--sweep", "expected VAR=lo..hi, got " + part);
    }
    const std::string var = part.substr(0, eq);
    if (var != "N" && var != "K" && var != "M") {
      throw CLI::ValidationError("--sweep", "unknown sweep variable " + var);
    }
    const std::string range = part.substr(eq + 1);
    const auto dots = range.find("..");
    SweepRange r;
    try {
      if (dots == std::string::npos) {
        r.lo = r.hi = static_cast<unsigned>(std::stoul(range));
      } else {
        r.lo = static_cast<unsigned>(std::stoul(range.substr(0, dots)));
        r.hi = static_cast<unsigned>(std::stoul(range.substr(dots + 2)));
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError("--sweep", "bad range " + range);
    }
    if (r.lo == 0 || r.hi < r.lo) {
      throw CLI::ValidationError("--sweep", "bad range " + range);
    }
    out[var] = r;
  }
  return out;
}

struct CliConfig {
  unsigned n = 3, k = 3, m = 1, q = 2;
  std::optional<unsigned> l;  // defaults to N-1
  std::uint64_t seed = 0;
  std::uint64_t sessions = 10000;
  std::uint64_t budget = oracle::kDefaultBudget;
  std::string format = "text";
  std::string sweep;
  std::string mutate;
  bool expand_pi = false;
  std::string ds_policy = "fixed";
  std::string write_golden;

  unsigned subpackets() const { return l.value_or(n - 1); }
  Params params() const { return validate_params(n, k, m, subpackets(), q); }
};

std::vector<Params> sweep_cells(const CliConfig& config) {
  std::vector<Params> cells;
  if (config.sweep.empty()) {
    cells.push_back(config.params());
    return cells;
  }
  auto ranges = parse_sweep(config.sweep);
  const SweepRange n_range =
      ranges.count("N") ? ranges["N"] : SweepRange{config.n, config.n};
  const SweepRange k_range =
      ranges.count("K") ? ranges["K"] : SweepRange{config.k, config.k};
  const SweepRange m_range =
      ranges.count("M") ? ranges["M"] : SweepRange{config.m, config.m};
  for (unsigned n = n_range.lo; n <= n_range.hi; ++n) {
    for (unsigned k = k_range.lo; k <= k_range.hi; ++k) {
      for (unsigned m = m_range.lo; m <= std::min(m_range.hi, k - 1); ++m) {
        cells.push_back(validate_params(n, k, m, n - 1, config.q));
      }
    }
  }
  return cells;
}

void emit(const std::string& text) { std::cout << text << "\n"; }

// ---------------------------------------------------------------------------
// rate

int cmd_rate(const CliConfig& config) {
  const std::vector<Params> cells = sweep_cells(config);

  if (config.format == "json") {
    json out = json::array();
    for (const Params& p : cells) out.push_back(cell_json(p, {}));
    emit(cells.size() == 1 ? out[0].dump(2) : out.dump(2));
    return 0;
  }

  if (config.format == "csv") {
    emit("N,K,M,L,q,g,divisible,R,Rstar,RL,relation,expected_download_symbols");
    for (const Params& p : cells) {
      const auto cmp = analysis::compare_rates(p);
      const auto report = analysis::rate_report(p);
      std::string rl;
      if (p.subpackets() != p.servers() - 1) {
        rl = fraction(analysis::rate_RL(p));
      }
      emit(std::to_string(p.servers()) + "," + std::to_string(p.messages()) +
           "," + std::to_string(p.side_info_count()) + "," +
           std::to_string(p.subpackets()) + "," +
           std::to_string(p.field_order()) + "," + std::to_string(p.groups()) +
           "," + (p.divisible() ? "true" : "false") + "," + fraction(cmp.r) +
           "," + fraction(cmp.rstar) + "," + rl + "," +
           (cmp.relation == analysis::RateRelation::kEqual
                ? "equal"
                : "strictly_greater") +
           "," + fraction(report.expected_download_symbols));
    }
    return 0;
  }

  emit(pad("N", 3) + pad("K", 3) + pad("M", 3) + pad("L", 3) + pad("q", 4) +
       pad("g", 3) + pad("R", 18) + pad("R*", 18) + pad("RL", 18) +
       pad("relation", 10) + "E[download]");
  for (const Params& p : cells) {
    const auto cmp = analysis::compare_rates(p);
    const auto report = analysis::rate_report(p);
    const std::string rl = p.subpackets() != p.servers() - 1
                               ? fraction_decimal(analysis::rate_RL(p))
                               : "-";
    emit(pad(std::to_string(p.servers()), 3) +
         pad(std::to_string(p.messages()), 3) +
         pad(std::to_string(p.side_info_count()), 3) +
         pad(std::to_string(p.subpackets()), 3) +
         pad(std::to_string(p.field_order()), 4) +
         pad(std::to_string(p.groups()), 3) + pad(fraction_decimal(cmp.r), 18) +
         pad(fraction_decimal(cmp.rstar), 18) + pad(rl, 18) +
         pad(cmp.relation == analysis::RateRelation::kEqual ? "R = R*"
                                                            : "R > R*",
             10) +
         fraction_decimal(report.expected_download_symbols));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

std::vector<CheckResult> verify_cell(const Params& p, const CliConfig& config) {
  std::vector<CheckResult> checks;
  oracle::EnumerationOptions options;
  options.budget = config.budget;
  options.permutations = config.expand_pi
                             ? oracle::PermutationHandling::kExpand
                             : oracle::PermutationHandling::kAnalytic;
  if (config.mutate == "fixed-b") {
    options.variant = oracle::SchemeVariant::kFixedSideEntries;
  }

  // P_k balance conditions, optionally on a perturbed distribution.
  {
    auto dist = analysis::compute_distribution(p);
    std::string detail = "index distribution balances the query classes";
    if (config.mutate == "perturb-p1" && dist.p.size() > 1) {
      dist.p[1] += Rat(1, 100);
      detail = "P_1 perturbed by +1/100";
    }
    const bool ok = analysis::verify_pk_conditions(p, dist);
    checks.push_back({"pk_conditions",
                      ok ? CheckState::kPass : CheckState::kFail, detail});
  }

  try {
    const oracle::PrivacyReport report = oracle::verify_privacy(p, options);
    std::string detail = std::to_string(report.table.size()) +
                         " distinct queries, rows constant across demands";
    if (!report.verdict && report.counterexample) {
      const auto& cx = *report.counterexample;
      detail = "query " + cx.query.to_string() + ": mass " +
               fraction(cx.mass_a) + " for W=" + std::to_string(cx.demand_a) +
               " vs " + fraction(cx.mass_b) + " for W=" +
               std::to_string(cx.demand_b);
    }
    checks.push_back({"privacy",
                      report.verdict ? CheckState::kPass : CheckState::kFail,
                      detail});

    std::string cf_detail = "oracle marginals equal the closed form exactly";
    if (!report.closed_form_match && report.closed_form_mismatch) {
      const auto& mm = *report.closed_form_mismatch;
      cf_detail = "query " + mm.query.to_string() + " at W=" +
                  std::to_string(mm.demand) + ": oracle " +
                  fraction(mm.oracle_mass) + " vs closed form " +
                  fraction(mm.closed_form);
    }
    checks.push_back({"closed_form_match", report.closed_form_match
                                               ? CheckState::kPass
                                               : CheckState::kFail,
                      cf_detail});
  } catch (const BudgetExceeded& e) {
    checks.push_back({"privacy", CheckState::kSkip, e.what()});
    checks.push_back({"closed_form_match", CheckState::kSkip, e.what()});
  }

  try {
    const bool ok = oracle::verify_recoverability(p, config.seed, options);
    checks.push_back(
        {"recoverability", ok ? CheckState::kPass : CheckState::kFail,
         "symbolic unit coefficients and seeded replay over all realizations"});
  } catch (const BudgetExceeded& e) {
    checks.push_back({"recoverability", CheckState::kSkip, e.what()});
  }

  try {
    const Rat expected = oracle::expected_download_exact(p, options);
    const auto dist = analysis::compute_distribution(p);
    const Rat analytic = Rat(static_cast<long>(p.servers())) - dist.p[0];
    const bool ok = expected == analytic;
    checks.push_back({"expected_download",
                      ok ? CheckState::kPass : CheckState::kFail,
                      "oracle " + fraction(expected) + ", N - P0 = " +
                          fraction(analytic)});
  } catch (const BudgetExceeded& e) {
    checks.push_back({"expected_download", CheckState::kSkip, e.what()});
  }

  return checks;
}

int cmd_verify(const CliConfig& config) {
  const std::vector<Params> cells = sweep_cells(config);
  bool any_fail = false;

  json json_out = json::array();
  bool csv_header = false;
  for (const Params& p : cells) {
    const std::vector<CheckResult> checks = verify_cell(p, config);
    for (const CheckResult& c : checks) {
      any_fail = any_fail || c.state == CheckState::kFail;
    }

    if (config.format == "json") {
      json_out.push_back(cell_json(p, checks));
    } else if (config.format == "csv") {
      if (!csv_header) {
        emit("N,K,M,L,q,check,pass,detail");
        csv_header = true;
      }
      for (const CheckResult& c : checks) {
        const std::string state = c.state == CheckState::kPass   ? "true"
                                  : c.state == CheckState::kFail ? "false"
                                                                 : "skipped";
        std::string detail = c.detail;
        for (char& ch : detail) {
          if (ch == ',') ch = ';';
        }
        emit(std::to_string(p.servers()) + "," + std::to_string(p.messages()) +
             "," + std::to_string(p.side_info_count()) + "," +
             std::to_string(p.subpackets()) + "," +
             std::to_string(p.field_order()) + "," + c.name + "," + state +
             "," + detail);
      }
    } else {
      emit("cell N=" + std::to_string(p.servers()) +
           " K=" + std::to_string(p.messages()) +
           " M=" + std::to_string(p.side_info_count()) +
           " L=" + std::to_string(p.subpackets()) +
           " q=" + std::to_string(p.field_order()));
      for (const CheckResult& c : checks) {
        const std::string tag = c.state == CheckState::kPass   ? "[PASS]"
                                : c.state == CheckState::kFail ? "[FAIL]"
                                                               : "[SKIP]";
        emit("  " + tag + " " + pad(c.name, 20) + c.detail);
      }
    }
  }

  if (config.format == "json") {
    emit(cells.size() == 1 ? json_out[0].dump(2) : json_out.dump(2));
  } else if (config.format == "text") {
    emit(any_fail ? "overall: FAIL" : "overall: PASS");
  }
  return any_fail ? 1 : 0;
}

// ---------------------------------------------------------------------------
// example

struct ExampleData {
  Params params;
  std::vector<oracle::Realization> realizations;  // the six rows
  std::vector<Rat> p;                             // P_0, P_1
};

ExampleData build_example() {
  const Params p = validate_params(3, 3, 1, 2, 2);
  const DemandSideInfo ds(p, 1, {2});
  ExampleData data{p, oracle::enumerate_realizations(p, ds).materialize(),
                   analysis::compute_distribution(p).p};
  return data;
}

// "P0/2 = 1/4": the index probability over the number of uniform choices.
std::string set_probability_label(const ExampleData& data,
                                  const oracle::Realization& real) {
  const unsigned index = real.plan.randomness_index();
  const Rat divisor = data.p[index] / real.probability;
  return "P" + std::to_string(index) + "/" + divisor.to_string() + " = " +
         real.probability.to_string();
}

// Symbolic answer sum of one query vector, with messages renamed through
// `names` ("1" -> names[0], ...).
std::string answer_term(const QueryVector& v,
                        const std::vector<std::string>& names) {
  if (v.is_zero()) return "0";
  std::string out;
  for (unsigned message : v.support()) {
    if (!out.empty()) out += "+";
    out += "X_{" + names[message - 1] + "," + std::to_string(v.at(message)) +
           "}";
  }
  return out;
}

std::string example_text() {
  const ExampleData data = build_example();
  const Params& p = data.params;
  std::ostringstream out;

  out << "Worked example: N=3 servers, K=3 messages, M=1 side information "
         "message\n";
  out << "Sub-packetization L = N-1 = 2, groups g = 2\n";
  out << "Index distribution: P0 = " << fraction_decimal(data.p[0])
      << ", P1 = " << fraction_decimal(data.p[1]) << "\n";
  out << "\n";

  out << "Query vector sets for W=1, S={2} (first two rows I=0, last four "
         "I=1):\n";
  out << "  " << pad("v1", 9) << pad("v2", 9) << pad("v3", 9)
      << "probability\n";
  for (const auto& real : data.realizations) {
    out << "  ";
    for (const QueryVector& v : real.plan.vectors()) {
      out << pad(v.to_string(), 9);
    }
    out << set_probability_label(data, real) << "\n";
  }
  out << "\n";

  const std::vector<std::string> literal = {"1", "2", "3"};
  out << "Answer sums for W=1, S={2}:\n";
  out << "  " << pad("Y1", 17) << pad("Y2", 25) << pad("Y3", 25)
      << "probability\n";
  for (const auto& real : data.realizations) {
    out << "  ";
    const auto& vectors = real.plan.vectors();
    out << pad(answer_term(vectors[0], literal), 17)
        << pad(answer_term(vectors[1], literal), 25)
        << pad(answer_term(vectors[2], literal), 25)
        << set_probability_label(data, real) << "\n";
  }
  out << "\n";

  const std::vector<std::string> general = {"i", "j", "k"};
  out << "Answer sums for general W=i, S={j}, interference {k}:\n";
  out << "  " << pad("Y1", 17) << pad("Y2", 25) << pad("Y3", 25)
      << "probability\n";
  for (const auto& real : data.realizations) {
    out << "  ";
    const auto& vectors = real.plan.vectors();
    out << pad(answer_term(vectors[0], general), 17)
        << pad(answer_term(vectors[1], general), 25)
        << pad(answer_term(vectors[2], general), 25)
        << set_probability_label(data, real) << "\n";
  }
  out << "\n";

  const QueryVector probe({0, 2, 1});
  out << "Privacy walkthrough for the query v* = " << probe.to_string()
      << " (answer " << answer_term(probe, literal) << "):\n";
  for (unsigned w = 1; w <= 3; ++w) {
    out << "  W*=" << w << ":";
    Rat marginal(0);
    unsigned side_count = 0;
    for (unsigned s = 1; s <= 3; ++s) {
      if (s == w) continue;
      const DemandSideInfo ds(p, w, {s});
      const auto dist = oracle::brute_force_query_distribution(p, ds, 1);
      const auto it = dist.find(probe);
      const Rat mass = it == dist.end() ? Rat(0) : it->second;
      marginal += mass;
      ++side_count;
      out << "  P(v*|W=" << w << ",S={" << s << "}) = " << pad(fraction(mass), 5);
    }
    marginal /= Rat(static_cast<long>(side_count));
    out << " =>  P(v*|W=" << w << ") = " << fraction(marginal) << "\n";
  }
  const Rat closed = analysis::closed_form_query_prob(p, probe, 1);
  out << "  Closed form agrees: P(v*|W=w) = " << fraction(closed)
      << " for every w, hence P(v*) = " << fraction(closed) << "\n";
  out << "\n";

  const auto cmp = analysis::compare_rates(p);
  const auto report = analysis::rate_report(p);
  out << "Rates: R = " << fraction_decimal(cmp.r) << " > R* = "
      << fraction_decimal(cmp.rstar)
      << "; expected download = " << fraction(report.expected_download_symbols)
      << " symbols\n";
  return out.str();
}

json example_json() {
  const ExampleData data = build_example();
  const Params& p = data.params;

  json out = cell_json(p, {});
  out["demand"] = 1;
  out["side_info"] = json::array({2});

  json sets = json::array();
  const std::vector<std::string> literal = {"1", "2", "3"};
  const std::vector<std::string> general = {"i", "j", "k"};
  for (const auto& real : data.realizations) {
    json row;
    row["index"] = real.plan.randomness_index();
    json vectors = json::array();
    json answers = json::array();
    json general_answers = json::array();
    for (const QueryVector& v : real.plan.vectors()) {
      vectors.push_back(v.comps());
      answers.push_back(answer_term(v, literal));
      general_answers.push_back(answer_term(v, general));
    }
    row["vectors"] = std::move(vectors);
    row["answers"] = std::move(answers);
    row["general_answers"] = std::move(general_answers);
    row["probability"] = fraction(real.probability);
    sets.push_back(std::move(row));
  }
  out["vector_sets"] = std::move(sets);

  const QueryVector probe({0, 2, 1});
  json walkthrough;
  walkthrough["query"] = probe.comps();
  json per_demand = json::array();
  for (unsigned w = 1; w <= 3; ++w) {
    json entry;
    entry["W"] = w;
    Rat marginal(0);
    unsigned side_count = 0;
    json per_side = json::array();
    for (unsigned s = 1; s <= 3; ++s) {
      if (s == w) continue;
      const DemandSideInfo ds(p, w, {s});
      const auto dist = oracle::brute_force_query_distribution(p, ds, 1);
      const auto it = dist.find(probe);
      const Rat mass = it == dist.end() ? Rat(0) : it->second;
      per_side.push_back(json{{"S", json::array({s})},
                              {"probability", fraction(mass)}});
      marginal += mass;
      ++side_count;
    }
    marginal /= Rat(static_cast<long>(side_count));
    entry["per_side"] = std::move(per_side);
    entry["marginal"] = fraction(marginal);
    per_demand.push_back(std::move(entry));
  }
  walkthrough["per_demand"] = std::move(per_demand);
  walkthrough["overall"] =
      fraction(analysis::closed_form_query_prob(p, probe, 1));
  out["walkthrough"] = std::move(walkthrough);
  return out;
}

int cmd_example(const CliConfig& config) {
  if (!config.write_golden.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(config.write_golden);
    std::ofstream text(fs::path(config.write_golden) / "example.txt",
                       std::ios::binary);
    text << example_text();
    std::ofstream js(fs::path(config.write_golden) / "example.json",
                     std::ios::binary);
    js << example_json().dump(2) << "\n";
    std::cout << "golden files written to " << config.write_golden << "\n";
    return 0;
  }
  if (config.format == "json") {
    emit(example_json().dump(2));
    return 0;
  }
  if (config.format == "csv") {
    std::cerr << "example: csv output is not defined; use text or json\n";
    return 1;
  }
  std::cout << example_text();
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const CliConfig& config) {
  const Params p = config.params();
  const bool two_step = p.subpackets() != p.servers() - 1;

  std::vector<unsigned> side(p.side_info_count());
  std::iota(side.begin(), side.end(), 2u);
  const DemandSideInfo canonical(p, 1, side);
  const simnet::DsPolicy policy = config.ds_policy == "uniform"
                                      ? simnet::DsPolicy::kUniformRandom
                                      : simnet::DsPolicy::kFixed;

  simnet::Harness harness(p, Rng(config.seed).next_u64());
  const simnet::ExperimentResult result =
      two_step ? harness.run_two_step_experiment(policy, canonical,
                                                 config.sessions, config.seed)
               : harness.run_experiment(policy, canonical, config.sessions,
                                        config.seed);

  char z_text[64];
  std::snprintf(z_text, sizeof(z_text), "%.3f", result.z_score());
  const bool ok = result.within_3sigma();

  if (config.format == "json") {
    json out = cell_json(p, {{"mean_download_within_3sigma",
                              ok ? CheckState::kPass : CheckState::kFail,
                              std::string("z = ") + z_text}});
    json experiment;
    experiment["scheme"] = two_step ? "two_step" : "main";
    experiment["sessions"] = result.sessions;
    experiment["seed"] = result.seed;
    experiment["ds_policy"] = config.ds_policy;
    experiment["total_download_symbols"] = result.total_download_symbols;
    experiment["mean_download_symbols"] =
        fraction(result.mean_download_symbols);
    experiment["analytic_expectation"] = fraction(result.analytic_expectation);
    experiment["empirical_rate"] = fraction(result.empirical_rate);
    experiment["analytic_rate"] = fraction(result.analytic_rate);
    experiment["z_score"] = result.z_score();
    experiment["within_3sigma"] = ok;
    out["experiment"] = std::move(experiment);
    emit(out.dump(2));
  } else if (config.format == "csv") {
    emit("N,K,M,L,q,scheme,sessions,seed,total_symbols,mean_download,"
         "analytic_expectation,empirical_rate,analytic_rate,z,within_3sigma");
    emit(std::to_string(p.servers()) + "," + std::to_string(p.messages()) +
         "," + std::to_string(p.side_info_count()) + "," +
         std::to_string(p.subpackets()) + "," +
         std::to_string(p.field_order()) + "," +
         (two_step ? "two_step" : "main") + "," +
         std::to_string(result.sessions) + "," + std::to_string(result.seed) +
         "," + std::to_string(result.total_download_symbols) + "," +
         fraction(result.mean_download_symbols) + "," +
         fraction(result.analytic_expectation) + "," +
         fraction(result.empirical_rate) + "," +
         fraction(result.analytic_rate) + "," + z_text + "," +
         (ok ? "true" : "false"));
  } else {
    emit("Simulation at N=" + std::to_string(p.servers()) +
         " K=" + std::to_string(p.messages()) +
         " M=" + std::to_string(p.side_info_count()) +
         " L=" + std::to_string(p.subpackets()) +
         " q=" + std::to_string(p.field_order()) +
         (two_step ? " (two-step over L+1 servers)" : ""));
    emit("  sessions            = " + std::to_string(result.sessions) +
         " (seed " + std::to_string(result.seed) + ", " + config.ds_policy +
         " demand)");
    emit("  mean download       = " +
         fraction_decimal(result.mean_download_symbols) + " symbols");
    emit("  analytic E[download]= " +
         fraction_decimal(result.analytic_expectation) + " symbols");
    emit("  empirical rate      = " + fraction_decimal(result.empirical_rate));
    emit("  analytic rate       = " + fraction_decimal(result.analytic_rate));
    emit(std::string("  z-score             = ") + z_text +
         (ok ? " (within 3 sigma)" : " (OUTSIDE 3 sigma)"));
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-server private information retrieval with side "
               "information: rates, audits, simulation"};
  app.require_subcommand(1);

  CliConfig config;
  const auto add_shared = [&](CLI::App* cmd, bool with_sweep) {
    cmd->add_option("--N", config.n, "Number of servers")->check(CLI::Range(2u, 1000000u));
    cmd->add_option("--K", config.k, "Number of messages")->check(CLI::Range(2u, 1000000u));
    cmd->add_option("--M", config.m, "Number of side information messages");
    cmd->add_option("--L", config.l, "Sub-packetization level (default N-1)");
    cmd->add_option("--q", config.q, "Field order (prime)");
    cmd->add_option("--seed", config.seed, "Deterministic seed");
    cmd->add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember(std::vector<std::string>(
            std::begin(kFormats), std::end(kFormats))));
    cmd->add_option("--budget", config.budget,
                    "Enumeration item cap (env PIRSI_BUDGET)")
        ->envname("PIRSI_BUDGET");
    if (with_sweep) {
      cmd->add_option("--sweep", config.sweep,
                      "Parameter sweep, e.g. N=2..5,K=2..8,M=1..3");
    }
  };

  CLI::App* rate = app.add_subcommand("rate", "Exact rate tables (R, R*, RL)");
  add_shared(rate, true);

  CLI::App* verify = app.add_subcommand(
      "verify", "Exhaustive privacy, recoverability and download audits");
  add_shared(verify, true);
  verify->add_option("--mutate", config.mutate,
                     "Run a documented falsifiability control")
      ->check(CLI::IsMember({"fixed-b", "perturb-p1"}));
  verify->add_flag("--expand-pi", config.expand_pi,
                   "Expand all N! permutations instead of the analytic fold");

  CLI::App* example = app.add_subcommand(
      "example", "Reproduce the worked N=3, K=3, M=1 walkthrough");
  example->add_option("--format", config.format, "Output format")
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kFormats),
                                                     std::end(kFormats))));
  example->add_option("--write-golden", config.write_golden,
                      "Regenerate golden files into this directory");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Seeded Monte-Carlo download experiments");
  add_shared(simulate, false);
  simulate->add_option("--sessions", config.sessions, "Number of sessions")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--ds", config.ds_policy,
                       "Demand/side-information policy per session")
      ->check(CLI::IsMember({"fixed", "uniform"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (rate->parsed()) return cmd_rate(config);
    if (verify->parsed()) return cmd_verify(config);
    if (example->parsed()) return cmd_example(config);
    if (simulate->parsed()) return cmd_simulate(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
