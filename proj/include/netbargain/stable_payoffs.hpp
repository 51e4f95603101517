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

#ifndef NETBARGAIN_STABLE_PAYOFFS_HPP
#define NETBARGAIN_STABLE_PAYOFFS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "netbargain/error.hpp"
#include "netbargain/market.hpp"
#include "netbargain/matching.hpp"
#include "netbargain/rational.hpp"

namespace netbargain {

/// Agent-wise extremes of the stable payoff set (the core).
struct PayoffBounds {
  PayoffVector max;
  PayoffVector min;

  friend bool operator==(const PayoffBounds&, const PayoffBounds&) = default;
};

/// x̄_k = v_G - v_{G_{-k}} (marginal contribution).
inline PayoffVector max_stable_payoffs(const SurplusQueryCache& cache) {
  const Market& m = cache.market();
  PayoffVector x = PayoffVector::zeros(m);
  const Rational total = cache.surplus();
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    const AgentId k = m.agent_at(f);
    x[k] = total - cache.without_agent(k);
  }
  return x;
}
inline PayoffVector max_stable_payoffs(const Market& m) {
  return max_stable_payoffs(SurplusQueryCache(m));
}

/// x̲_k = v_{k,mu(k)} - x̄_{mu(k)} for any optimal `mu`; 0 when k is unmatched.
inline PayoffVector min_stable_payoffs(const Market& m, const Matching& mu,
                                       const PayoffVector& max_payoffs) {
  PayoffVector x = PayoffVector::zeros(m);
  for (const auto& p : mu.pairs()) {
    const Rational& v = m.link(p).value;
    x[buyer(p.buyer)] = v - max_payoffs[seller(p.seller)];
    x[seller(p.seller)] = v - max_payoffs[buyer(p.buyer)];
  }
  return x;
}
inline PayoffVector min_stable_payoffs(const SurplusQueryCache& cache) {
  return min_stable_payoffs(cache.market(), max_weight_matching(cache).matching,
                            max_stable_payoffs(cache));
}
inline PayoffVector min_stable_payoffs(const Market& m) {
  return min_stable_payoffs(SurplusQueryCache(m));
}

inline PayoffBounds stable_bounds(const SurplusQueryCache& cache) {
  PayoffBounds b;
  b.max = max_stable_payoffs(cache);
  b.min = min_stable_payoffs(cache.market(), max_weight_matching(cache).matching,
                             b.max);
  return b;
}
inline PayoffBounds stable_bounds(const Market& m) {
  return stable_bounds(SurplusQueryCache(m));
}

/// x >= 0, x_i + x_j >= v_ij on all links, sum x = v_G.
inline bool is_core_member(const SurplusQueryCache& cache,
                           const PayoffVector& x) {
  const Market& m = cache.market();
  if (!x.conforms_to(m)) {
    throw Error(Errc::DimensionMismatch, "payoff vector does not fit market");
  }
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    if (x[m.agent_at(f)].sign() < 0) return false;
  }
  for (const auto& l : m.links()) {
    if (x[l.buyer_id()] + x[l.seller_id()] < l.value) return false;
  }
  return x.total() == cache.surplus();
}
inline bool is_core_member(const Market& m, const PayoffVector& x) {
  return is_core_member(SurplusQueryCache(m), x);
}

/// Canonical matching with x̄ on buyers and x̲ on sellers.
inline Outcome buyer_optimal_outcome(const SurplusQueryCache& cache) {
  const Market& m = cache.market();
  const PayoffBounds b = stable_bounds(cache);
  Outcome o{max_weight_matching(cache).matching, PayoffVector::zeros(m)};
  for (std::size_t i = 0; i < m.num_buyers(); ++i) o.payoffs[buyer(i)] = b.max[buyer(i)];
  for (std::size_t j = 0; j < m.num_sellers(); ++j) o.payoffs[seller(j)] = b.min[seller(j)];
  return o;
}
inline Outcome buyer_optimal_outcome(const Market& m) {
  return buyer_optimal_outcome(SurplusQueryCache(m));
}

/// Canonical matching with x̲ on buyers and x̄ on sellers.
inline Outcome seller_optimal_outcome(const SurplusQueryCache& cache) {
  const Market& m = cache.market();
  const PayoffBounds b = stable_bounds(cache);
  Outcome o{max_weight_matching(cache).matching, PayoffVector::zeros(m)};
  for (std::size_t i = 0; i < m.num_buyers(); ++i) o.payoffs[buyer(i)] = b.min[buyer(i)];
  for (std::size_t j = 0; j < m.num_sellers(); ++j) o.payoffs[seller(j)] = b.max[seller(j)];
  return o;
}
inline Outcome seller_optimal_outcome(const Market& m) {
  return seller_optimal_outcome(SurplusQueryCache(m));
}

// ---------------------------------------------------------------------------
// Extremes of x_i + x_j over the core for one buyer i and one seller j.
//
// With u = buyer payoffs and w = seller payoffs, substitute q_s = -w_s. Every
// core constraint becomes a difference constraint over (z = 0, p_b = u_b, q_s),
// so max(a - b) over the core is the shortest-path distance b -> a in the
// constraint graph (edge b -> a of weight c for each a - b <= c).

struct SumRange {
  Rational min;
  Rational max;
};

namespace detail {

class DifferenceConstraints {
 public:
  explicit DifferenceConstraints(std::size_t nodes) : nodes_(nodes) {}

  /// x_to - x_from <= weight.
  void add(std::size_t from, std::size_t to, Rational weight) {
    edges_.push_back({from, to, std::move(weight)});
  }

  /// Max of x_to - x_from over the feasible set (Bellman-Ford from `from`).
  Rational max_difference(std::size_t from, std::size_t to) const {
    std::vector<std::optional<Rational>> dist(nodes_);
    dist[from] = Rational(0);
    for (std::size_t round = 0; round + 1 < nodes_; ++round) {
      bool changed = false;
      for (const auto& e : edges_) {
        if (!dist[e.from]) continue;
        Rational cand = *dist[e.from] + e.weight;
        if (!dist[e.to] || cand < *dist[e.to]) {
          dist[e.to] = std::move(cand);
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (const auto& e : edges_) {
      if (dist[e.from] && *dist[e.from] + e.weight < *dist[e.to]) {
        throw Error(Errc::InternalConsistency, "core constraint system is empty");
      }
    }
    if (!dist[to]) {
      throw Error(Errc::InternalConsistency, "core difference is unbounded");
    }
    return *dist[to];
  }

 private:
  struct Edge {
    std::size_t from;
    std::size_t to;
    Rational weight;
  };
  std::size_t nodes_;
  std::vector<Edge> edges_;
};

inline DifferenceConstraints core_constraints(const Market& m,
                                              const Matching& mu) {
  const std::size_t z = 0;
  auto p = [&](std::size_t b) { return 1 + b; };
  auto q = [&](std::size_t s) { return 1 + m.num_buyers() + s; };
  DifferenceConstraints g(1 + m.num_agents());
  for (std::size_t b = 0; b < m.num_buyers(); ++b) {
    g.add(p(b), z, 0);                                     // u_b >= 0
    if (!mu.is_matched(buyer(b))) g.add(z, p(b), 0);       // u_b <= 0
  }
  for (std::size_t s = 0; s < m.num_sellers(); ++s) {
    g.add(z, q(s), 0);                                     // w_s >= 0
    if (!mu.is_matched(seller(s))) g.add(q(s), z, 0);      // w_s <= 0
  }
  for (const auto& l : m.links()) {
    g.add(p(l.buyer), q(l.seller), -l.value);              // u + w >= v
    if (mu.contains(l.key())) g.add(q(l.seller), p(l.buyer), l.value);
  }
  return g;
}

}  // namespace detail

/// Range of u_i + w_j over the core of `cache.market()`.
inline SumRange core_pair_sum_range(const SurplusQueryCache& cache,
                                    const Pair& pair) {
  const Market& m = cache.market();
  m.require_agent(buyer(pair.buyer));
  m.require_agent(seller(pair.seller));
  const auto g =
      detail::core_constraints(m, max_weight_matching(cache).matching);
  const std::size_t pi = 1 + pair.buyer;
  const std::size_t qj = 1 + m.num_buyers() + pair.seller;
  // u_i + w_j = p_i - q_j.
  return {-g.max_difference(pi, qj), g.max_difference(qj, pi)};
}
inline SumRange core_pair_sum_range(const Market& m, const Pair& pair) {
  return core_pair_sum_range(SurplusQueryCache(m), pair);
}

}  // namespace netbargain

#endif  // NETBARGAIN_STABLE_PAYOFFS_HPP
