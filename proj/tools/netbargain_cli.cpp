// Copyright 2026 The netbargain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// netbargain: file-in, report-out front end.
//
// Exit codes: 0 verdict true or success, 1 verdict false / no convergence /
// crosscheck failures, 2 bad input, bad flags or internal error.
// The JSON report goes to stdout last; unless --json-only, a text rendering
// precedes it.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "netbargain/netbargain.hpp"

namespace nb = netbargain;
using nb::Json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nb::Error(nb::Errc::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Names the file an input error came from.
std::string g_current_file;

nb::Market load_market(const std::string& path) {
  g_current_file = path;
  nb::Market m = nb::parse_market(read_file(path));
  g_current_file.clear();
  return m;
}

// Accepts "p/q", integers and plain decimals such as 1e-9 or 0.001, exactly.
nb::Rational parse_tolerance(const std::string& text) {
  try {
    return nb::Rational::parse(text);
  } catch (const nb::Error&) {
  }
  static const std::regex decimal(R"(([0-9]*)(?:\.([0-9]*))?(?:[eE]([+-]?[0-9]+))?)");
  std::smatch g;
  if (text.empty() || !std::regex_match(text, g, decimal) ||
      (g[1].length() == 0 && g[2].length() == 0)) {
    throw nb::Error(nb::Errc::InvalidArgument, "bad tolerance \"" + text + "\"");
  }
  const std::string digits = g[1].str() + g[2].str();
  long exponent = -static_cast<long>(g[2].length());
  if (g[3].matched) exponent += std::stol(g[3].str());
  if (exponent < -1000 || exponent > 1000) {
    throw nb::Error(nb::Errc::InvalidArgument, "tolerance exponent out of range");
  }
  const std::string power = "1" + std::string(static_cast<std::size_t>(std::labs(exponent)), '0');
  const std::string num = digits.empty() ? "0" : digits;
  return exponent >= 0 ? nb::Rational::parse(num + power.substr(1))
                       : nb::Rational::parse(num) / nb::Rational::parse(power);
}

nb::AgentId agent_named(const nb::Market& m, const std::string& name, nb::Side side) {
  auto k = m.find_agent(name);
  if (!k) throw nb::Error(nb::Errc::UnknownAgent, "no agent named \"" + name + "\"");
  if (k->side != side) {
    throw nb::Error(nb::Errc::SameSide, "\"" + name + "\" is not a " +
                                            (side == nb::Side::Buyer ? "buyer" : "seller"));
  }
  return *k;
}

Json base_report(const std::string& command, const nb::Market& m) {
  Json r;
  r["command"] = command;
  r["market"] = nb::market_to_json(m);
  return r;
}

struct Output {
  bool json_only = false;
  std::string text;
  Json report;

  int emit(int code) const {
    if (!json_only && !text.empty()) std::cout << text << "\n";
    std::cout << report.dump(2) << "\n";
    return code;
  }
};

int cmd_solve(const std::string& path, Output& out) {
  const nb::Market m = load_market(path);
  const nb::SurplusQueryCache cache(m);
  const nb::MatchingResult best = nb::max_weight_matching(cache);
  const nb::PayoffBounds b = nb::stable_bounds(cache);
  const nb::Outcome o = nb::compromise_cbs(cache, best.matching);
  out.report = base_report("solve", m);
  out.report["optimal_surplus"] = best.surplus.str();
  out.report["matching"] = nb::matching_to_json(m, best.matching);
  out.report["stable_bounds"] = nb::bounds_to_json(m, b);
  out.report["compromise"] = nb::outcome_to_json(m, o);
  Json witnesses = Json::array();
  for (const auto& p : best.matching.pairs()) {
    witnesses.push_back(nb::compromise_witness_to_json(m, p, nb::compromise_witness(m, p)));
  }
  out.report["witnesses"] = std::move(witnesses);

  out.text = "optimal surplus: " + best.surplus.pretty() + "\n" +
             nb::matching_line(m, best.matching) +
             nb::payoff_table(m, {"max", "min", "compromise"}, {&b.max, &b.min, &o.payoffs});
  for (const auto& p : best.matching.pairs()) {
    const auto w = nb::compromise_witness(m, p);
    out.text += m.link_name(p) + ": alpha " + w.alpha.pretty() + ", delta " +
                w.delta.pretty() + ", d = (" + w.options.buyer.pretty() + ", " +
                w.options.seller.pretty() + ")\n";
  }
  return out.emit(0);
}

int cmd_check(const std::string& market_path, const std::string& outcome_path,
              const std::string& concept_name, Output& out) {
  const nb::Market m = load_market(market_path);
  g_current_file = outcome_path;
  const nb::Outcome o = nb::parse_outcome(read_file(outcome_path), m);
  g_current_file.clear();
  out.report = base_report("check", m);
  out.report["concept"] = concept_name;
  out.report["outcome"] = nb::outcome_to_json(m, o);
  bool verdict = false;
  if (concept_name == "stable") {
    const nb::StabilityReport r = nb::is_stable(m, o);
    verdict = r.stable;
    out.report["verdict"] = verdict;
    out.report["report"] = nb::stability_to_json(m, r);
    out.text = nb::stability_text(m, r);
  } else if (concept_name == "cbs") {
    const nb::CbsReport r = nb::verify_cbs(m, o);
    verdict = r.overall;
    out.report["verdict"] = verdict;
    out.report["report"] = nb::cbs_report_to_json(m, r);
    out.text = nb::stability_text(m, r.stability);
    for (const auto& l : r.links) {
      out.text += m.link_name(l.link) + ": " +
                  (l.justifiable ? "justifiable" : "NOT justifiable") +
                  (l.essential ? ", essential" : "") + "\n";
    }
    out.text += std::string("credible bargaining solution: ") + (verdict ? "yes" : "no") + "\n";
  } else {
    const nb::BalancedReport r = nb::verify_balanced(m, o);
    verdict = r.balanced;
    out.report["verdict"] = verdict;
    out.report["report"] = nb::balanced_report_to_json(m, r);
    out.text = nb::stability_text(m, r.stability);
    for (const auto& l : r.links) {
      out.text += m.link_name(l.link) + ": residual " + l.residual.pretty() + "\n";
    }
    out.text += std::string("balanced: ") + (verdict ? "yes" : "no") + "\n";
  }
  return out.emit(verdict ? 0 : 1);
}

int cmd_decompose(const std::string& path, Output& out) {
  const nb::Market m = load_market(path);
  const nb::DecompositionReport r = nb::decompose(m);
  out.report = base_report("decompose", m);
  out.report["decomposition"] = nb::decomposition_to_json(m, r);
  out.text = nb::decomposition_text(m, r);
  return out.emit(0);
}

int cmd_characterize(const std::string& path, Output& out) {
  const nb::Market m = load_market(path);
  const nb::UnitSurplusCharacterization c = nb::characterize_unit_surplus(m);
  out.report = base_report("characterize", m);
  out.report["characterization"] = nb::characterization_to_json(m, c);
  for (const auto& row : c.constraints) out.text += "  " + row.describe(m) + "\n";
  return out.emit(0);
}

int cmd_balanced(const std::string& path, const std::string& tol_text,
                 std::size_t max_iter, Output& out) {
  const nb::Market m = load_market(path);
  const nb::Rational tol = parse_tolerance(tol_text);
  const nb::BalancedSolveResult r = nb::solve_balanced(m, tol, max_iter);
  out.report = base_report("balanced", m);
  out.report["result"] = nb::balanced_solve_to_json(m, r, tol, max_iter);
  out.text = std::string(r.converged ? "converged" : "did NOT converge") + " after " +
             std::to_string(r.iterations) + " rounds, residual " + r.residual.pretty() +
             "\n" + nb::matching_line(m, r.outcome.matching) +
             nb::payoff_table(m, {"payoff"}, {&r.outcome.payoffs});
  return out.emit(r.converged ? 0 : 1);
}

int cmd_core_bounds(const std::string& path, Output& out) {
  const nb::Market m = load_market(path);
  const nb::SurplusQueryCache cache(m);
  const nb::PayoffBounds b = nb::stable_bounds(cache);
  out.report = base_report("core-bounds", m);
  out.report["optimal_surplus"] = cache.surplus().str();
  out.report["stable_bounds"] = nb::bounds_to_json(m, b);
  out.report["buyer_optimal"] = nb::outcome_to_json(m, nb::buyer_optimal_outcome(cache));
  out.report["seller_optimal"] = nb::outcome_to_json(m, nb::seller_optimal_outcome(cache));
  out.text = nb::payoff_table(m, {"max", "min"}, {&b.max, &b.min});
  return out.emit(0);
}

int cmd_essential(const std::string& path, Output& out) {
  const nb::Market m = load_market(path);
  const nb::SurplusQueryCache cache(m);
  out.report = base_report("essential", m);
  Json links = Json::array();
  nb::detail::Table t({"link", "value", "matchable", "essential"});
  for (const auto& l : m.links()) {
    const bool matchable = nb::is_matchable_link(cache, l.key());
    const bool essential = nb::is_essential_link(cache, l.key());
    Json item;
    item["link"] = nb::pair_to_json(m, l.key());
    item["value"] = l.value.str();
    item["matchable"] = matchable;
    item["essential"] = essential;
    links.push_back(std::move(item));
    t.add({m.link_name(l.key()), l.value.pretty(), matchable ? "yes" : "no",
           essential ? "yes" : "no"});
  }
  out.report["links"] = std::move(links);
  out.text = t.render();
  return out.emit(0);
}

int cmd_witness(const std::string& path, const std::string& buyer_name,
                const std::string& seller_name, Output& out) {
  const nb::Market m = load_market(path);
  const nb::AgentId i = agent_named(m, buyer_name, nb::Side::Buyer);
  const nb::AgentId j = agent_named(m, seller_name, nb::Side::Seller);
  const nb::Pair l{i.index, j.index};
  const nb::CompromiseWitness w = nb::compromise_witness(m, l);
  const nb::DifferenceInterval range = nb::credible_difference_interval(m, l);
  const bool credible = nb::is_credible(m, l, w.options);
  out.report = base_report("witness", m);
  out.report["witness"] = nb::compromise_witness_to_json(m, l, w);
  out.report["difference_interval"] = Json{{"lo", range.lo.str()}, {"hi", range.hi.str()}};
  out.report["credible"] = credible;
  out.text = m.link_name(l) + "\n  alpha " + w.alpha.pretty() + "\n  delta " +
             w.delta.pretty() + "\n  d = (" + w.options.buyer.pretty() + ", " +
             w.options.seller.pretty() + ")\n  NBS = (" + w.nbs.buyer.pretty() + ", " +
             w.nbs.seller.pretty() + ")\n  credible differences [" + range.lo.pretty() +
             ", " + range.hi.pretty() + "]\n";
  return out.emit(credible ? 0 : 1);
}

int cmd_crosscheck(std::uint64_t seed, std::size_t trials,
                   const nb::oracle::MarketGenerator& gen, Output& out) {
  if (gen.min_side == 0 || gen.min_side > gen.max_side) {
    throw nb::Error(nb::Errc::InvalidArgument, "need 1 <= min-side <= max-side");
  }
  if (gen.max_side > 6) throw nb::Error(nb::Errc::TooLarge, "max-side above 6");
  out.report = nb::crosscheck::run(seed, trials, gen);
  out.report = Json{{"command", "oracle-crosscheck"}, {"summary", out.report}};
  const std::size_t failed = out.report["summary"]["failures"].size();
  out.text = std::to_string(trials) + " trials, " + std::to_string(failed) + " failures\n";
  return out.emit(failed == 0 ? 0 : 1);
}

int run(int argc, char** argv) {
  CLI::App app{"netbargain: assignment games, stable payoffs and credible bargaining"};
  app.require_subcommand(1);
  Output out;
  std::uint64_t seed = 1;
  app.add_flag("--json-only", out.json_only, "Print only the JSON report");
  app.add_option("--seed", seed, "Master seed for randomized commands");

  std::string market, outcome, buyer_name, seller_name, concept_name = "cbs";
  std::string tol = "1/1000000000";
  std::size_t max_iter = 10000, trials = 100;
  nb::oracle::MarketGenerator gen;

  auto* solve = app.add_subcommand("solve", "Optimal matching, stable bounds, compromise CBS");
  auto* check = app.add_subcommand("check", "Verify an outcome file");
  auto* decompose = app.add_subcommand("decompose", "U/O/P classes, components, essential links");
  auto* characterize = app.add_subcommand("characterize", "Linear description of CBS (unit surplus)");
  auto* balanced = app.add_subcommand("balanced", "Iterate towards a balanced outcome");
  auto* bounds = app.add_subcommand("core-bounds", "Maximal and minimal stable payoffs");
  auto* essential = app.add_subcommand("essential", "Matchable and essential links");
  auto* witness = app.add_subcommand("witness", "Compromise outside options for one link");
  auto* cross = app.add_subcommand("oracle-crosscheck", "Random markets, fast path vs oracle");

  for (auto* sub : {solve, check, decompose, characterize, balanced, bounds, essential, witness}) {
    sub->add_option("market", market, "Market file")->required();
  }
  check->add_option("outcome", outcome, "Outcome file")->required();
  check->add_option("--concept", concept_name, "stable, cbs or balanced")
      ->check(CLI::IsMember({"stable", "cbs", "balanced"}));
  balanced->add_option("--tol", tol, "Stopping tolerance (p/q or decimal)");
  balanced->add_option("--max-iter", max_iter, "Round limit")->check(CLI::PositiveNumber);
  witness->add_option("buyer", buyer_name, "Buyer name")->required();
  witness->add_option("seller", seller_name, "Seller name")->required();
  cross->add_option("--trials", trials, "Number of random markets");
  cross->add_flag("--unit-surplus", gen.unit_surplus, "All link values 1");
  cross->add_option("--min-side", gen.min_side, "Smallest side size");
  cross->add_option("--max-side", gen.max_side, "Largest side size");
  cross->add_option("--link-prob", gen.link_probability, "Link probability")
      ->check(CLI::Range(0.0, 1.0));
  cross->add_option("--max-value", gen.max_value, "Largest link value")
      ->check(CLI::NonNegativeNumber);
  // --seed is also accepted after the subcommand name.
  cross->add_option("--seed", seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve) return cmd_solve(market, out);
    if (*check) return cmd_check(market, outcome, concept_name, out);
    if (*decompose) return cmd_decompose(market, out);
    if (*characterize) return cmd_characterize(market, out);
    if (*balanced) return cmd_balanced(market, tol, max_iter, out);
    if (*bounds) return cmd_core_bounds(market, out);
    if (*essential) return cmd_essential(market, out);
    if (*witness) return cmd_witness(market, buyer_name, seller_name, out);
    if (*cross) return cmd_crosscheck(seed, trials, gen, out);
  } catch (const nb::Error& e) {
    Json err;
    err["code"] = nb::errc_name(e.code());
    err["file"] = g_current_file;
    err["path"] = e.path();
    err["message"] = e.what();
    std::cerr << "error: " << e.what()
              << (g_current_file.empty() ? "" : " (in " + g_current_file + ")") << "\n";
    std::cout << Json{{"error", err}}.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    std::cout << Json{{"error", {{"code", "Internal"}, {"message", e.what()}}}}.dump(2) << "\n";
    return 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
