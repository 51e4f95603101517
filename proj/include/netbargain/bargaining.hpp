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

// Bilateral bargaining between a matched buyer i and seller j whose outside
// options come from stable outcomes of the submarket (G_{-ij}, v).
//
// The credible option pairs are the projection of that submarket's core onto
// (x_i, x_j). The core is convex and its buyer-optimal point gives i its
// maximum and j its minimum at once (and symmetrically for the seller-optimal
// point), so the achievable differences d_i - d_j form the interval
// [y̲_i - ȳ_j, ȳ_i - y̲_j].

#ifndef NETBARGAIN_BARGAINING_HPP
#define NETBARGAIN_BARGAINING_HPP

#include <optional>
#include <utility>

#include "netbargain/error.hpp"
#include "netbargain/market.hpp"
#include "netbargain/matching.hpp"
#include "netbargain/rational.hpp"
#include "netbargain/stable_payoffs.hpp"

namespace netbargain {

struct OutsideOptions {
  Rational buyer;   // d_i
  Rational seller;  // d_j

  friend bool operator==(const OutsideOptions&, const OutsideOptions&) = default;
};

struct Split {
  Rational buyer;
  Rational seller;

  friend bool operator==(const Split&, const Split&) = default;
};

namespace detail {

inline Split split_the_difference(const Rational& v, const OutsideOptions& d) {
  const Rational half_rest = (v - d.buyer - d.seller) / 2;
  return {d.buyer + half_rest, d.seller + half_rest};
}

}  // namespace detail

/// NBS(v; d_i, d_j). Throws InfeasibleThreat when d_i + d_j > v.
inline Split nash_bargaining(const Rational& v, const OutsideOptions& d) {
  if (d.buyer + d.seller > v) {
    throw Error(Errc::InfeasibleThreat,
                "outside options " + d.buyer.str() + " + " + d.seller.str() +
                    " exceed surplus " + v.str());
  }
  return detail::split_the_difference(v, d);
}

struct DifferenceInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const DifferenceInterval&,
                         const DifferenceInterval&) = default;
};

/// The pieces of (G_{-ij}, v) every bilateral query needs.
struct SubmarketView {
  Pair link;
  Rational value;  // v_ij
  Market market;   // G_{-ij}
  PayoffBounds bounds;
  Matching matching;  // canonical optimal matching of G_{-ij}

  AgentId i() const { return buyer(link.buyer); }
  AgentId j() const { return seller(link.seller); }

  DifferenceInterval difference_interval() const {
    return {bounds.min[i()] - bounds.max[j()], bounds.max[i()] - bounds.min[j()]};
  }
};

inline SubmarketView submarket_view(const Market& m, const Pair& l) {
  SubmarketView view{l, m.link(l).value, remove_link(m, l), {}, {}};
  SurplusQueryCache cache(view.market);
  view.bounds = stable_bounds(cache);
  view.matching = max_weight_matching(cache).matching;
  return view;
}

inline DifferenceInterval credible_difference_interval(const Market& m,
                                                       const Pair& l) {
  return submarket_view(m, l).difference_interval();
}

/// True iff some stable outcome of (G_{-ij}, v) pays exactly d to (i, j).
/// The projection of a core onto two agents is cut out by their individual
/// bounds and by the range of their sum.
inline bool is_credible(const Market& m, const Pair& l,
                        const OutsideOptions& d) {
  const SubmarketView view = submarket_view(m, l);
  const auto& b = view.bounds;
  if (d.buyer < b.min[view.i()] || d.buyer > b.max[view.i()]) return false;
  if (d.seller < b.min[view.j()] || d.seller > b.max[view.j()]) return false;
  if (!view.difference_interval().contains(d.buyer - d.seller)) return false;
  const SumRange sums =
      core_pair_sum_range(SurplusQueryCache(view.market), l);
  const Rational sum = d.buyer + d.seller;
  return sums.min <= sum && sum <= sums.max;
}

/// A stable outcome of (G_{-ij}, v) whose payoffs at i and j are `options`.
/// `witness_outcome` = (1 - weight) * seller-optimal + weight * buyer-optimal.
struct CredibilityWitness {
  OutsideOptions options;
  Outcome witness_outcome;
  Rational mixing_weight;
};

inline CredibilityWitness mix_witness(const SubmarketView& view,
                                      const Rational& weight) {
  const auto& b = view.bounds;
  PayoffVector seller_opt = PayoffVector::zeros(view.market);
  PayoffVector buyer_opt = PayoffVector::zeros(view.market);
  for (std::size_t i = 0; i < view.market.num_buyers(); ++i) {
    seller_opt[buyer(i)] = b.min[buyer(i)];
    buyer_opt[buyer(i)] = b.max[buyer(i)];
  }
  for (std::size_t j = 0; j < view.market.num_sellers(); ++j) {
    seller_opt[seller(j)] = b.max[seller(j)];
    buyer_opt[seller(j)] = b.min[seller(j)];
  }
  CredibilityWitness w;
  w.witness_outcome = {view.matching,
                       PayoffVector::lerp(seller_opt, buyer_opt, weight)};
  w.options = {w.witness_outcome.payoffs[view.i()],
               w.witness_outcome.payoffs[view.j()]};
  w.mixing_weight = weight;
  return w;
}

struct Justification {
  bool justifiable = false;
  std::optional<CredibilityWitness> witness;
};

/// Whether (x_i, x_j) = NBS(v_ij; d) for some credible d, i.e. whether
/// x_i - x_j lies in the credible difference interval.
inline Justification is_justifiable(const Market& m, const Pair& l,
                                    const Rational& x_i, const Rational& x_j) {
  const Rational& v = m.link(l).value;
  if (x_i + x_j != v) {
    throw Error(Errc::SplitMismatch, "split " + x_i.str() + " + " + x_j.str() +
                                         " does not divide " + v.str());
  }
  if (!is_matchable_link(m, l)) {
    throw Error(Errc::NotMatchable,
                "link " + m.link_name(l) + " is in no optimal matching");
  }
  const SubmarketView view = submarket_view(m, l);
  const DifferenceInterval range = view.difference_interval();
  const Rational diff = x_i - x_j;
  if (!range.contains(diff)) return {};
  const Rational weight =
      range.lo == range.hi ? Rational(0) : (diff - range.lo) / (range.hi - range.lo);
  return {true, mix_witness(view, weight)};
}

/// Symmetric-compromise outside options d = (ȳ_i - δ, ȳ_j - δ).
struct CompromiseWitness {
  OutsideOptions options;
  Rational delta;
  Rational alpha;
  PayoffBounds submarket_bounds;  // ȳ, y̲ over all agents of G_{-ij}
  Split nbs;
};

inline CompromiseWitness compromise_witness(const Market& m, const Pair& l) {
  if (!is_matchable_link(m, l)) {
    throw Error(Errc::NotMatchable,
                "link " + m.link_name(l) + " is in no optimal matching");
  }
  const SubmarketView view = submarket_view(m, l);
  const auto& b = view.bounds;
  const Rational gap_i = b.max[view.i()] - b.min[view.i()];
  const Rational gap_j = b.max[view.j()] - b.min[view.j()];
  CompromiseWitness w;
  w.submarket_bounds = b;
  if (gap_i.is_zero() || gap_j.is_zero()) {
    w.delta = 0;
    w.alpha = 1;
  } else {
    // (1 - alpha) / alpha = gap_j / gap_i.
    w.alpha = gap_i / (gap_i + gap_j);
    w.delta = (Rational(1) - w.alpha) * gap_i;
  }
  w.options = {b.max[view.i()] - w.delta, b.max[view.j()] - w.delta};
  w.nbs = nash_bargaining(view.value, w.options);
  return w;
}

}  // namespace netbargain

#endif  // NETBARGAIN_BARGAINING_HPP
