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

#ifndef NETBARGAIN_SOLUTION_HPP
#define NETBARGAIN_SOLUTION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "netbargain/bargaining.hpp"
#include "netbargain/decomposition.hpp"
#include "netbargain/error.hpp"
#include "netbargain/market.hpp"
#include "netbargain/matching.hpp"
#include "netbargain/rational.hpp"
#include "netbargain/stable_payoffs.hpp"

namespace netbargain {

// ---------------------------------------------------------------------------
// Credible bargaining solutions.

struct LinkVerdict {
  Pair link;
  bool justifiable = false;
  std::optional<CredibilityWitness> witness;
  bool essential = false;
  bool matchable = false;
};

struct CbsReport {
  StabilityReport stability;
  std::vector<LinkVerdict> links;  // one per matched pair, in pair order
  bool overall = false;
};

/// Stability plus justifiability of every matched split. Every matched pair
/// is evaluated, also after the first failure.
inline CbsReport verify_cbs(const Market& m, const Outcome& o) {
  CbsReport report;
  report.stability = is_stable(m, o);
  const SurplusQueryCache cache(m);
  bool all_justified = true;
  for (const auto& p : o.matching.pairs()) {
    LinkVerdict verdict;
    verdict.link = p;
    verdict.essential = is_essential_link(cache, p);
    verdict.matchable = is_matchable_link(cache, p);
    const Rational& x_i = o.payoffs[buyer(p.buyer)];
    const Rational& x_j = o.payoffs[seller(p.seller)];
    if (verdict.matchable && x_i + x_j == m.link(p).value) {
      Justification j = is_justifiable(m, p, x_i, x_j);
      verdict.justifiable = j.justifiable;
      verdict.witness = std::move(j.witness);
    }
    if (report.stability.stable && !verdict.essential && !verdict.justifiable) {
      throw Error(Errc::InternalConsistency,
                  "non-essential matched link " + m.link_name(p) +
                      " of a stable outcome is not justifiable");
    }
    all_justified = all_justified && verdict.justifiable;
    report.links.push_back(std::move(verdict));
  }
  report.overall = report.stability.stable && all_justified;
  return report;
}

/// Midpoint of the stable bounds, (x̄ + x̲) / 2, on the given optimal matching.
inline Outcome compromise_cbs(const SurplusQueryCache& cache,
                              const Matching& mu) {
  if (!is_optimal(cache, mu)) {
    throw Error(Errc::NotOptimal, "compromise needs an optimal matching");
  }
  const PayoffBounds b = stable_bounds(cache);
  return {mu, PayoffVector::lerp(b.min, b.max, Rational(1, 2))};
}
inline Outcome compromise_cbs(const Market& m) {
  const SurplusQueryCache cache(m);
  return compromise_cbs(cache, max_weight_matching(cache).matching);
}

/// Re-verifies the payoffs of a CBS on another optimal matching.
inline CbsReport matching_swap_check(const Market& m, const Outcome& o,
                                     const Matching& other) {
  if (!is_optimal(m, other)) {
    throw Error(Errc::NotOptimal, "swap target is not an optimal matching");
  }
  return verify_cbs(m, {other, o.payoffs});
}

// ---------------------------------------------------------------------------
// Unit surplus: CBS = stable outcomes paying 1/2 on both ends of every matched
// essential link.

struct LinearConstraint {
  enum class Relation { Equal, GreaterEqual };
  std::vector<std::pair<AgentId, Rational>> terms;
  Relation relation = Relation::GreaterEqual;
  Rational rhs;

  std::string describe(const Market& m) const {
    std::string out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const auto& [agent, coeff] = terms[k];
      if (k > 0) out += " + ";
      if (coeff != Rational(1)) out += coeff.str() + "*";
      out += "x[" + m.name(agent) + "]";
    }
    out += relation == Relation::Equal ? " = " : " >= ";
    return out + rhs.str();
  }
};

struct UnitSurplusCharacterization {
  std::vector<Pair> essential_links;
  std::vector<AgentId> half_agents;  // endpoints forced to 1/2
  std::vector<LinearConstraint> constraints;
};

inline UnitSurplusCharacterization characterize_unit_surplus(const Market& m) {
  detail::require_unit_surplus(m);
  const SurplusQueryCache cache(m);
  UnitSurplusCharacterization c;
  for (const auto& l : m.links()) {
    if (is_essential_link(cache, l.key())) c.essential_links.push_back(l.key());
  }
  if (c.essential_links != essential_links_structural(m)) {
    throw Error(Errc::InternalConsistency,
                "surplus test and decomposition disagree on essential links");
  }
  using Rel = LinearConstraint::Relation;
  LinearConstraint total{{}, Rel::Equal, cache.surplus()};
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    const AgentId k = m.agent_at(f);
    c.constraints.push_back({{{k, Rational(1)}}, Rel::GreaterEqual, Rational(0)});
    total.terms.push_back({k, Rational(1)});
  }
  for (const auto& l : m.links()) {
    c.constraints.push_back({{{l.buyer_id(), Rational(1)}, {l.seller_id(), Rational(1)}},
                             Rel::GreaterEqual, l.value});
  }
  c.constraints.push_back(std::move(total));
  for (const auto& p : c.essential_links) {
    for (const AgentId k : {buyer(p.buyer), seller(p.seller)}) {
      c.half_agents.push_back(k);
      c.constraints.push_back({{{k, Rational(1)}}, Rel::Equal, Rational(1, 2)});
    }
  }
  return c;
}

inline bool verify_cbs_unit(const Market& m, const Outcome& o) {
  detail::require_unit_surplus(m);
  if (!is_stable(m, o).stable) return false;
  const SurplusQueryCache cache(m);
  const Rational half(1, 2);
  for (const auto& p : o.matching.pairs()) {
    if (is_essential_link(cache, p) &&
        (o.payoffs[buyer(p.buyer)] != half || o.payoffs[seller(p.seller)] != half)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Balanced outcomes: NBS under the largest deviation payoff, others fixed.

/// d_k = max(0, max over links kl other than `excluded` of v_kl - x_l).
inline Rational deviation_outside_option(const Market& m, const Outcome& o,
                                         const AgentId& k, const Pair& excluded) {
  require_conforming(m, o);
  const bool endpoint = k.side == Side::Buyer ? excluded.buyer == k.index
                                              : excluded.seller == k.index;
  if (!endpoint) {
    throw Error(Errc::NotEndpoint, m.name(k) + " is not an endpoint of " +
                                       std::to_string(excluded.buyer) + "-" +
                                       std::to_string(excluded.seller));
  }
  Rational best;
  for (std::size_t idx : m.incident(k)) {
    const Link& l = m.links()[idx];
    if (l.key() == excluded) continue;
    const AgentId other = k.side == Side::Buyer ? l.seller_id() : l.buyer_id();
    best = max(best, l.value - o.payoffs[other]);
  }
  return best;
}

struct BalancedLinkReport {
  Pair link;
  OutsideOptions options;
  Split nbs;
  Rational residual;  // |x_i - NBS_i|
};

struct BalancedReport {
  StabilityReport stability;
  std::vector<BalancedLinkReport> links;
  bool balanced = false;
};

inline BalancedReport verify_balanced(const Market& m, const Outcome& o) {
  BalancedReport report;
  report.stability = is_stable(m, o);
  bool exact = true;
  for (const auto& p : o.matching.pairs()) {
    BalancedLinkReport r;
    r.link = p;
    r.options = {deviation_outside_option(m, o, buyer(p.buyer), p),
                 deviation_outside_option(m, o, seller(p.seller), p)};
    r.nbs = detail::split_the_difference(m.link(p).value, r.options);
    r.residual = abs(o.payoffs[buyer(p.buyer)] - r.nbs.buyer);
    exact = exact && r.residual.is_zero();
    report.links.push_back(std::move(r));
  }
  report.balanced = report.stability.stable && exact;
  return report;
}

/// verify_balanced with every stability deficit and residual allowed up to tol.
inline bool is_balanced_within(const Market& m, const Outcome& o,
                               const Rational& tol) {
  const BalancedReport r = verify_balanced(m, o);
  for (const auto& v : r.stability.violations) {
    if (v.deficit > tol) return false;
  }
  for (const auto& l : r.links) {
    if (l.residual > tol) return false;
  }
  return true;
}

struct BalancedSolveResult {
  Outcome outcome;
  bool converged = false;
  std::size_t iterations = 0;  // rounds evaluated, the final check included
  Rational residual;           // max |x - NBS| at the returned point
};

/// Damped synchronous rebargaining from the compromise point: every round each
/// matched pair moves halfway to NBS under the current deviation options.
/// Stops once the largest residual is at most tol.
inline BalancedSolveResult solve_balanced(const Market& m, const Rational& tol,
                                          std::size_t max_iter) {
  if (tol.sign() <= 0) throw Error(Errc::InvalidArgument, "tol must be positive");
  if (max_iter == 0) throw Error(Errc::InvalidArgument, "max_iter must be positive");
  BalancedSolveResult result;
  result.outcome = compromise_cbs(m);
  Outcome& o = result.outcome;
  const Rational half(1, 2);
  while (result.iterations < max_iter) {
    ++result.iterations;
    std::vector<Split> targets;
    Rational worst;
    for (const auto& p : o.matching.pairs()) {
      const OutsideOptions d{deviation_outside_option(m, o, buyer(p.buyer), p),
                             deviation_outside_option(m, o, seller(p.seller), p)};
      targets.push_back(detail::split_the_difference(m.link(p).value, d));
      worst = max(worst, abs(o.payoffs[buyer(p.buyer)] - targets.back().buyer));
    }
    result.residual = worst;
    if (worst <= tol) {
      result.converged = true;
      return result;
    }
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const Pair& p = o.matching.pairs()[k];
      Rational& xi = o.payoffs[buyer(p.buyer)];
      Rational& xj = o.payoffs[seller(p.seller)];
      xi += half * (targets[k].buyer - xi);
      xj += half * (targets[k].seller - xj);
    }
  }
  return result;
}

/// Replaces every payoff by the simplest rational within tol of it; returns the
/// result only if it is exactly balanced.
inline std::optional<Outcome> snap_balanced(const Market& m, const Outcome& o,
                                            const Rational& tol) {
  Outcome snapped{o.matching, PayoffVector::zeros(m)};
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    const AgentId k = m.agent_at(f);
    snapped.payoffs[k] = simplest_between(o.payoffs[k] - tol, o.payoffs[k] + tol);
  }
  if (!is_feasible(m, snapped) || !verify_balanced(m, snapped).balanced) {
    return std::nullopt;
  }
  return snapped;
}

}  // namespace netbargain

#endif  // NETBARGAIN_SOLUTION_HPP
