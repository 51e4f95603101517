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

// Fast path against oracle, one market at a time. Each check appends a
// Failure per discrepancy instead of stopping, so a run reports everything.

#ifndef NETBARGAIN_CROSSCHECK_HPP
#define NETBARGAIN_CROSSCHECK_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "netbargain/bargaining.hpp"
#include "netbargain/decomposition.hpp"
#include "netbargain/error.hpp"
#include "netbargain/io.hpp"
#include "netbargain/market.hpp"
#include "netbargain/matching.hpp"
#include "netbargain/oracle.hpp"
#include "netbargain/solution.hpp"
#include "netbargain/stable_payoffs.hpp"

namespace netbargain::crosscheck {

struct Failure {
  std::string check;
  std::string detail;
};

using Failures = std::vector<Failure>;

namespace detail {

inline std::string outcome_text(const Market& m, const Outcome& o) {
  return outcome_to_json(m, o).dump();
}

// Runs `body`, turning any library error into a failure of `check`.
template <class F>
void guarded(Failures& out, const std::string& check, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    out.push_back({check, std::string("threw: ") + e.what()});
  }
}

}  // namespace detail

/// Submarket core vertices per matchable link (oracle view), computed once.
struct OracleView {
  oracle::BruteOptimum optimum;
  std::vector<Pair> matchable;  // links in some brute-optimal matching
  std::map<Pair, oracle::CoreVertexSet> submarket_cores;

  explicit OracleView(const Market& m) : optimum(oracle::brute_optimal(m)) {
    for (const auto& l : m.links()) {
      for (const auto& mu : optimum.matchings) {
        if (mu.contains(l.key())) {
          matchable.push_back(l.key());
          break;
        }
      }
    }
    for (const auto& l : matchable) {
      submarket_cores.emplace(l, oracle::core_vertices(remove_link(m, l)));
    }
  }
};

/// The compromise outcome is a CBS. Appends it to `found` when it is.
inline void compromise_is_cbs(const Market& m, Failures& out, std::vector<Outcome>* found) {
  detail::guarded(out, "compromise_is_cbs", [&] {
    const Outcome o = compromise_cbs(m);
    if (!verify_cbs(m, o).overall) {
      out.push_back({"compromise_is_cbs", "compromise outcome rejected: " + detail::outcome_text(m, o)});
    } else if (found != nullptr) {
      found->push_back(o);
    }
  });
}

inline void oracle_equivalence(const Market& m, const OracleView& view, Failures& out) {
  const SurplusQueryCache cache(m);
  detail::guarded(out, "surplus", [&] {
    if (cache.surplus() != view.optimum.surplus) {
      out.push_back({"surplus", cache.surplus().str() + " vs oracle " +
                                    view.optimum.surplus.str()});
    }
  });
  detail::guarded(out, "optimal_matchings", [&] {
    if (enumerate_optimal_matchings(cache, 1u << 16) != view.optimum.matchings) {
      out.push_back({"optimal_matchings", "optimal matching sets differ"});
    }
  });
  detail::guarded(out, "stable_bounds", [&] {
    if (stable_bounds(cache) != oracle::brute_stable_bounds(m)) {
      out.push_back({"stable_bounds", "bounds differ from vertex extremes"});
    }
  });
  detail::guarded(out, "essential", [&] {
    for (const auto& l : m.links()) {
      if (is_essential_link(cache, l.key()) != oracle::brute_essential(m, l.key())) {
        out.push_back({"essential", "link " + m.link_name(l.key())});
      }
    }
  });
  for (const auto& [l, core] : view.submarket_cores) {
    const std::string name = m.link_name(l);
    detail::guarded(out, "justifiable", [&] {
      const Rational v = m.link(l).value;
      const DifferenceInterval truth = oracle::difference_range(core, l);
      std::vector<Rational> buyer_shares;
      for (int k = 0; k <= 4; ++k) buyer_shares.push_back(v * Rational(k, 4));
      // Boundary splits: x_i = (v + diff) / 2 at both ends of the range.
      buyer_shares.push_back((v + truth.lo) / 2);
      buyer_shares.push_back((v + truth.hi) / 2);
      for (const auto& x_i : buyer_shares) {
        const Rational x_j = v - x_i;
        const bool fast = is_justifiable(m, l, x_i, x_j).justifiable;
        const bool slow = truth.contains(x_i - x_j);
        if (fast != slow) {
          out.push_back({"justifiable", "link " + name + " split (" + x_i.str() +
                                            ", " + x_j.str() + ")"});
        }
      }
    });
    detail::guarded(out, "pair_bound", [&] {
      const Rational& v = m.link(l).value;
      for (const auto& y : core.vertices) {
        if (y[buyer(l.buyer)] + y[seller(l.seller)] > v) {
          out.push_back({"pair_bound", "link " + name + " at a submarket vertex"});
        }
      }
    });
  }
}

/// Unit surplus: verify_cbs_unit agrees with verify_cbs on every core vertex
/// and every midpoint of two vertices; the structural essential set agrees
/// with the oracle; decomposition invariants hold. CBSs are appended to `found`.
inline void unit_characterization(const Market& m, Failures& out, std::vector<Outcome>* found) {
  const oracle::BruteOptimum opt = oracle::brute_optimal(m);
  const Matching& mu = opt.matchings.front();
  std::vector<Outcome> samples;
  detail::guarded(out, "unit_characterization", [&] {
    const auto core = oracle::core_vertices(m).vertices;
    for (std::size_t a = 0; a < core.size(); ++a) {
      samples.push_back({mu, core[a]});
      for (std::size_t b = a + 1; b < core.size(); ++b) {
        samples.push_back({mu, PayoffVector::lerp(core[a], core[b], Rational(1, 2))});
      }
    }
    for (const auto& o : samples) {
      const bool unit = verify_cbs_unit(m, o);
      const bool general = verify_cbs(m, o).overall;
      if (unit != general) {
        out.push_back({"unit_characterization", "disagreement at " + detail::outcome_text(m, o)});
      }
      if (general && found != nullptr) found->push_back(o);
    }
  });
  detail::guarded(out, "essential_structural", [&] {
    std::vector<Pair> brute;
    for (const auto& l : m.links()) {
      if (oracle::brute_essential(m, l.key())) brute.push_back(l.key());
    }
    if (essential_links_structural(m) != brute) {
      out.push_back({"essential_structural", "structural essential set differs"});
    }
  });
  detail::guarded(out, "decomposition", [&] {
    const DecompositionReport r = decompose(m);
    const SurplusQueryCache cache(m);
    const PayoffBounds b = stable_bounds(cache);
    for (std::size_t f = 0; f < m.num_agents(); ++f) {
      const AgentId k = m.agent_at(f);
      const bool under = cache.without_agent(k) == cache.surplus();
      if (under != (r.classes[k] == AgentClass::UnderDemanded)) {
        out.push_back({"decomposition", "class of " + m.name(k)});
      }
      const Rational fixed =
          r.classes[k] == AgentClass::UnderDemanded ? Rational(0) : Rational(1);
      if (r.classes[k] != AgentClass::PerfectlyMatched &&
          (b.max[k] != fixed || b.min[k] != fixed)) {
        out.push_back({"decomposition", "stable payoff of " + m.name(k)});
      }
    }
    for (const auto& l : m.links()) {
      if (r.classes[l.buyer_id()] == AgentClass::UnderDemanded &&
          r.classes[l.seller_id()] == AgentClass::UnderDemanded) {
        out.push_back({"decomposition", "U agents linked by " + m.link_name(l.key())});
      }
    }
    for (const auto& nu : opt.matchings) {
      for (std::size_t f = 0; f < m.num_agents(); ++f) {
        const AgentId k = m.agent_at(f);
        const auto partner = nu.partner(k);
        const AgentClass c = r.classes[k];
        const bool ok =
            c == AgentClass::OverDemanded
                ? partner && r.classes[*partner] == AgentClass::UnderDemanded
            : c == AgentClass::PerfectlyMatched
                ? partner && r.classes[*partner] == AgentClass::PerfectlyMatched
                : true;
        if (!ok) out.push_back({"decomposition", "matching structure at " + m.name(k)});
      }
    }
    for (const auto& p : r.labels.allowed) {
      if (!is_matchable_link(cache, p)) {
        out.push_back({"decomposition", "allowed but unmatchable " + m.link_name(p)});
      }
    }
    for (const auto& p : r.labels.forbidden) {
      if (is_matchable_link(cache, p)) {
        out.push_back({"decomposition", "forbidden but matchable " + m.link_name(p)});
      }
    }
    for (const auto& c : r.components) {
      if (c.links.size() < 2) continue;
      for (const auto& p : c.links) {
        bool excluded = false;
        for (const auto& nu : opt.matchings) excluded = excluded || !nu.contains(p);
        if (!excluded) out.push_back({"decomposition", "no optimal matching avoids " + m.link_name(p)});
      }
    }
  });
}

/// A CBS stays a CBS on every optimal matching.
inline void matching_invariance(const Market& m, const Outcome& cbs, Failures& out) {
  detail::guarded(out, "matching_invariance", [&] {
    for (const auto& nu : enumerate_optimal_matchings(m, 1u << 16)) {
      if (!matching_swap_check(m, cbs, nu).overall) {
        out.push_back({"matching_invariance",
                       detail::outcome_text(m, cbs) + " on " +
                           matching_to_json(m, nu).dump()});
      }
    }
  });
}

/// Compromise witness options are credible (fast and oracle), split to the
/// midpoint, and have delta >= 0, alpha in [0, 1].
inline void compromise_witnesses(const Market& m, const OracleView& view, Failures& out) {
  detail::guarded(out, "compromise_witness", [&] {
    const Outcome mid = compromise_cbs(m);
    for (const auto& [l, core] : view.submarket_cores) {
      const std::string name = "link " + m.link_name(l);
      const CompromiseWitness w = compromise_witness(m, l);
      if (!is_credible(m, l, w.options)) {
        out.push_back({"compromise_witness", name + ": options not credible"});
      }
      if (!oracle::hull_contains(core, l, w.options)) {
        out.push_back({"compromise_witness", name + ": oracle rejects options"});
      }
      const Split expect{mid.payoffs[buyer(l.buyer)], mid.payoffs[seller(l.seller)]};
      if (w.nbs != expect) {
        out.push_back({"compromise_witness", name + ": NBS is not the midpoint"});
      }
      if (w.delta.sign() < 0) out.push_back({"compromise_witness", name + ": delta < 0"});
      if (w.alpha.sign() < 0 || w.alpha > Rational(1)) {
        out.push_back({"compromise_witness", name + ": alpha outside [0,1]"});
      }
    }
  });
}

/// Everything applicable to one market.
inline Failures check_market(const Market& m, bool unit_surplus) {
  Failures out;
  std::vector<Outcome> found;
  compromise_is_cbs(m, out, &found);
  try {
    const OracleView view(m);
    oracle_equivalence(m, view, out);
    compromise_witnesses(m, view, out);
  } catch (const std::exception& e) {
    out.push_back({"oracle", std::string("threw: ") + e.what()});
  }
  if (unit_surplus) unit_characterization(m, out, &found);
  for (const auto& o : found) matching_invariance(m, o, out);
  return out;
}

/// JSON summary {trials, failures: [{trial, seed, market, check, detail}]}.
inline Json run(std::uint64_t seed, std::size_t trials,
                const oracle::MarketGenerator& gen) {
  Json summary;
  summary["seed"] = seed;
  summary["trials"] = trials;
  summary["unit_surplus"] = gen.unit_surplus;
  summary["failures"] = Json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t s = oracle::trial_seed(seed, t);
    std::mt19937_64 rng(s);
    const Market m = gen(rng);
    for (const auto& f : check_market(m, gen.unit_surplus)) {
      Json item;
      item["trial"] = t;
      item["seed"] = s;
      item["market"] = market_to_json(m);
      item["check"] = f.check;
      item["detail"] = f.detail;
      summary["failures"].push_back(std::move(item));
    }
  }
  return summary;
}

}  // namespace netbargain::crosscheck

#endif  // NETBARGAIN_CROSSCHECK_HPP
