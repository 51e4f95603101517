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

// JSON forms of every report (fixed member order) and plain-text tables.
// Text tables print a rational as "p/q (~d.dddddd)"; the decimal is an
// approximation, the fraction is exact.

#ifndef NETBARGAIN_REPORT_HPP
#define NETBARGAIN_REPORT_HPP

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "netbargain/bargaining.hpp"
#include "netbargain/decomposition.hpp"
#include "netbargain/io.hpp"
#include "netbargain/market.hpp"
#include "netbargain/solution.hpp"
#include "netbargain/stable_payoffs.hpp"

namespace netbargain {

inline Json pair_to_json(const Market& m, const Pair& p) {
  return Json::array({m.name(buyer(p.buyer)), m.name(seller(p.seller))});
}

inline Json pairs_to_json(const Market& m, const std::vector<Pair>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(pair_to_json(m, p));
  return out;
}

inline Json bounds_to_json(const Market& m, const PayoffBounds& b) {
  Json out;
  out["max"] = payoffs_to_json(m, b.max);
  out["min"] = payoffs_to_json(m, b.min);
  return out;
}

inline Json options_to_json(const OutsideOptions& d) {
  Json out;
  out["buyer"] = d.buyer.str();
  out["seller"] = d.seller.str();
  return out;
}

inline Json split_to_json(const Split& s) {
  Json out;
  out["buyer"] = s.buyer.str();
  out["seller"] = s.seller.str();
  return out;
}

inline Json stability_to_json(const Market& m, const StabilityReport& r) {
  Json out;
  out["stable"] = r.stable;
  out["violations"] = Json::array();
  for (const auto& v : r.violations) {
    Json item;
    if (v.kind == StabilityViolation::Kind::NegativePayoff) {
      item["kind"] = "negative_payoff";
      item["agent"] = m.name(v.agent);
    } else {
      item["kind"] = "blocking_link";
      item["link"] = pair_to_json(m, v.link);
    }
    item["deficit"] = v.deficit.str();
    out["violations"].push_back(std::move(item));
  }
  return out;
}

/// The witness outcome lives on G_{-ij}, which shares the agents of `m`.
inline Json credibility_witness_to_json(const Market& m,
                                        const CredibilityWitness& w) {
  Json out;
  out["options"] = options_to_json(w.options);
  out["mixing_weight"] = w.mixing_weight.str();
  out["submarket_outcome"] = outcome_to_json(m, w.witness_outcome);
  return out;
}

inline Json cbs_report_to_json(const Market& m, const CbsReport& r) {
  Json out;
  out["verdict"] = r.overall;
  out["stability"] = stability_to_json(m, r.stability);
  out["links"] = Json::array();
  for (const auto& v : r.links) {
    Json item;
    item["link"] = pair_to_json(m, v.link);
    item["justifiable"] = v.justifiable;
    item["essential"] = v.essential;
    item["matchable"] = v.matchable;
    item["witness"] = v.witness ? credibility_witness_to_json(m, *v.witness) : Json();
    out["links"].push_back(std::move(item));
  }
  return out;
}

inline Json compromise_witness_to_json(const Market& m, const Pair& l,
                                       const CompromiseWitness& w) {
  Json out;
  out["link"] = pair_to_json(m, l);
  out["alpha"] = w.alpha.str();
  out["delta"] = w.delta.str();
  out["options"] = options_to_json(w.options);
  out["nbs"] = split_to_json(w.nbs);
  out["submarket_bounds"] = bounds_to_json(m, w.submarket_bounds);
  return out;
}

inline Json balanced_report_to_json(const Market& m, const BalancedReport& r) {
  Json out;
  out["verdict"] = r.balanced;
  out["stability"] = stability_to_json(m, r.stability);
  out["links"] = Json::array();
  for (const auto& l : r.links) {
    Json item;
    item["link"] = pair_to_json(m, l.link);
    item["options"] = options_to_json(l.options);
    item["nbs"] = split_to_json(l.nbs);
    item["residual"] = l.residual.str();
    out["links"].push_back(std::move(item));
  }
  return out;
}

inline Json balanced_solve_to_json(const Market& m, const BalancedSolveResult& r,
                                   const Rational& tol, std::size_t max_iter) {
  Json out;
  out["converged"] = r.converged;
  out["tol"] = tol.str();
  out["max_iter"] = max_iter;
  out["iterations"] = r.iterations;
  out["residual"] = r.residual.str();
  out["outcome"] = outcome_to_json(m, r.outcome);
  return out;
}

inline Json decomposition_to_json(const Market& m, const DecompositionReport& r) {
  Json out;
  Json classes;
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    const AgentId k = m.agent_at(f);
    classes[m.name(k)] = agent_class_name(r.classes[k]);
  }
  out["classes"] = std::move(classes);
  out["matching_size"] = r.matching_size;
  out["allowed_links"] = pairs_to_json(m, r.labels.allowed);
  out["forbidden_links"] = pairs_to_json(m, r.labels.forbidden);
  out["out_of_p_links"] = Json::array();
  for (const auto& x : r.labels.out_of_p) {
    Json item;
    item["link"] = pair_to_json(m, x.link);
    item["allowed"] = x.allowed;
    out["out_of_p_links"].push_back(std::move(item));
  }
  out["elementary_components"] = Json::array();
  for (const auto& c : r.components) {
    Json item;
    item["agents"] = Json::array();
    for (const auto& k : c.agents) item["agents"].push_back(m.name(k));
    item["links"] = pairs_to_json(m, c.links);
    out["elementary_components"].push_back(std::move(item));
  }
  out["essential_links"] = pairs_to_json(m, r.essential_links);
  return out;
}

inline Json characterization_to_json(const Market& m,
                                     const UnitSurplusCharacterization& c) {
  Json out;
  out["essential_links"] = pairs_to_json(m, c.essential_links);
  out["half_agents"] = Json::array();
  for (const auto& k : c.half_agents) out["half_agents"].push_back(m.name(k));
  out["constraints"] = Json::array();
  for (const auto& row : c.constraints) out["constraints"].push_back(row.describe(m));
  return out;
}

// ---------------------------------------------------------------------------
// Text tables.

namespace detail {

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      width.resize(std::max(width.size(), r.size()));
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::ostringstream os;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      for (std::size_t c = 0; c < rows_[k].size(); ++c) {
        if (c > 0) os << "  ";
        os << rows_[k][c];
        if (c + 1 < rows_[k].size()) os << std::string(width[c] - rows_[k][c].size(), ' ');
      }
      os << '\n';
      if (k == 0) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c > 0 ? 2 : 0);
        os << std::string(total, '-') << '\n';
      }
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string join_pairs(const Market& m, const std::vector<Pair>& ps) {
  std::string out;
  for (const auto& p : ps) out += (out.empty() ? "" : ", ") + m.link_name(p);
  return out.empty() ? "(none)" : out;
}

}  // namespace detail

inline std::string payoff_table(const Market& m,
                                const std::vector<std::string>& columns,
                                const std::vector<const PayoffVector*>& vectors) {
  std::vector<std::string> header{"agent"};
  header.insert(header.end(), columns.begin(), columns.end());
  detail::Table t(std::move(header));
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    const AgentId k = m.agent_at(f);
    std::vector<std::string> row{m.name(k)};
    for (const auto* x : vectors) row.push_back((*x)[k].pretty());
    t.add(std::move(row));
  }
  return t.render();
}

inline std::string matching_line(const Market& m, const Matching& mu) {
  return "matching: " +
         detail::join_pairs(m, std::vector<Pair>(mu.pairs().begin(), mu.pairs().end())) +
         "\n";
}

inline std::string stability_text(const Market& m, const StabilityReport& r) {
  if (r.stable) return "stable: yes\n";
  std::string out = "stable: no\n";
  for (const auto& v : r.violations) {
    if (v.kind == StabilityViolation::Kind::NegativePayoff) {
      out += "  negative payoff at " + m.name(v.agent);
    } else {
      out += "  blocking link " + m.link_name(v.link);
    }
    out += ", deficit " + v.deficit.pretty() + "\n";
  }
  return out;
}

inline std::string decomposition_text(const Market& m, const DecompositionReport& r) {
  std::ostringstream os;
  for (const AgentClass cls : {AgentClass::UnderDemanded, AgentClass::OverDemanded,
                               AgentClass::PerfectlyMatched}) {
    os << agent_class_name(cls) << ":";
    bool any = false;
    for (std::size_t f = 0; f < m.num_agents(); ++f) {
      const AgentId k = m.agent_at(f);
      if (r.classes[k] == cls) {
        os << " " << m.name(k);
        any = true;
      }
    }
    os << (any ? "" : " (none)") << "\n";
  }
  os << "forbidden in P: " << detail::join_pairs(m, r.labels.forbidden) << "\n";
  detail::Table t({"component", "agents", "allowed links"});
  for (std::size_t c = 0; c < r.components.size(); ++c) {
    std::string agents;
    for (const auto& k : r.components[c].agents) agents += (agents.empty() ? "" : " ") + m.name(k);
    t.add({std::to_string(c + 1), agents, detail::join_pairs(m, r.components[c].links)});
  }
  os << t.render();
  os << "essential: " << detail::join_pairs(m, r.essential_links) << "\n";
  return os.str();
}

}  // namespace netbargain

#endif  // NETBARGAIN_REPORT_HPP
