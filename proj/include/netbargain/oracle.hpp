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

// Brute-force ground truth for desk-scale markets. Nothing here calls the
// matching engine, the payoff bounds or the bargaining layer; it works from
// exhaustive matching enumeration and exact vertex enumeration of the core.

#ifndef NETBARGAIN_ORACLE_HPP
#define NETBARGAIN_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "netbargain/bargaining.hpp"
#include "netbargain/error.hpp"
#include "netbargain/market.hpp"
#include "netbargain/rational.hpp"
#include "netbargain/stable_payoffs.hpp"

namespace netbargain::oracle {

inline constexpr std::size_t kMaxLinks = 24;
inline constexpr std::size_t kMaxAgents = 12;

/// Every matching of G, the empty one included, sorted by pair list.
inline std::vector<Matching> enumerate_matchings(const Market& m) {
  if (m.links().size() > kMaxLinks) {
    throw Error(Errc::TooLarge, std::to_string(m.links().size()) +
                                    " links exceed the oracle limit of " +
                                    std::to_string(kMaxLinks));
  }
  std::vector<Matching> out;
  std::vector<Pair> current;
  std::vector<bool> buyer_used(m.num_buyers()), seller_used(m.num_sellers());
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == m.links().size()) {
      out.emplace_back(current);
      return;
    }
    self(self, k + 1);
    const Link& l = m.links()[k];
    if (!buyer_used[l.buyer] && !seller_used[l.seller]) {
      buyer_used[l.buyer] = seller_used[l.seller] = true;
      current.push_back(l.key());
      self(self, k + 1);
      current.pop_back();
      buyer_used[l.buyer] = seller_used[l.seller] = false;
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct BruteOptimum {
  Rational surplus;
  std::vector<Matching> matchings;  // all maximizers, sorted
};

inline BruteOptimum brute_optimal(const Market& m) {
  BruteOptimum best;
  bool first = true;
  for (auto& mu : enumerate_matchings(m)) {
    Rational s;
    for (const auto& p : mu.pairs()) s += m.link(p).value;
    if (first || s > best.surplus) {
      best.surplus = s;
      best.matchings.clear();
      first = false;
    }
    if (s == best.surplus) best.matchings.push_back(std::move(mu));
  }
  return best;
}

/// Vertices of the stable payoff polytope, deduplicated and sorted.
struct CoreVertexSet {
  std::vector<PayoffVector> vertices;
};

namespace detail {

// One row a . t >= c over the free coordinates t (one per matched pair).
struct Row {
  std::vector<Rational> a;
  Rational c;
  friend auto operator<=>(const Row& x, const Row& y) {
    if (auto r = x.a <=> y.a; r != 0) return r;
    return x.c <=> y.c;
  }
  friend bool operator==(const Row&, const Row&) = default;
};

// Solves A t = c for square A; nullopt when singular.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> c) {
  const std::size_t n = c.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(c[pivot], c[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      c[r] -= f * c[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) c[r] /= a[r][r];
  return c;
}

}  // namespace detail

/// Enumerates the vertices of {x >= 0; x_i + x_j >= v_ij on links;
/// x_i + x_j = v_ij on mu*; x_k = 0 off mu*} for the oracle's own optimal
/// matching mu*. The equalities leave one free coordinate per matched pair
/// (the buyer's payoff); every subset of tight rows of full rank is solved
/// exactly and kept when feasible.
inline CoreVertexSet core_vertices(const Market& m) {
  if (m.num_agents() > kMaxAgents) {
    throw Error(Errc::TooLarge, std::to_string(m.num_agents()) +
                                    " agents exceed the oracle limit of " +
                                    std::to_string(kMaxAgents));
  }
  const BruteOptimum opt = brute_optimal(m);
  const Matching& mu = opt.matchings.front();
  const std::size_t dim = mu.size();

  // Each payoff as coeffs . t + constant.
  struct Affine {
    std::vector<Rational> coeffs;
    Rational constant;
  };
  std::vector<Affine> buyers(m.num_buyers(), {std::vector<Rational>(dim), {}});
  std::vector<Affine> sellers(m.num_sellers(), {std::vector<Rational>(dim), {}});
  for (std::size_t k = 0; k < dim; ++k) {
    const Pair& p = mu.pairs()[k];
    buyers[p.buyer].coeffs[k] = 1;
    sellers[p.seller].coeffs[k] = -1;
    sellers[p.seller].constant = m.link(p).value;
  }

  std::vector<detail::Row> rows;
  auto add_row = [&](const Affine& x, const Affine* y, const Rational& rhs) {
    detail::Row r{x.coeffs, rhs - x.constant};
    if (y != nullptr) {
      for (std::size_t k = 0; k < dim; ++k) r.a[k] += y->coeffs[k];
      r.c -= y->constant;
    }
    if (std::all_of(r.a.begin(), r.a.end(), [](const Rational& q) { return q.is_zero(); })) {
      if (r.c.sign() > 0) {
        throw Error(Errc::InternalConsistency, "oracle core is empty");
      }
      return;
    }
    rows.push_back(std::move(r));
  };
  for (const auto& b : buyers) add_row(b, nullptr, 0);
  for (const auto& s : sellers) add_row(s, nullptr, 0);
  for (const auto& l : m.links()) add_row(buyers[l.buyer], &sellers[l.seller], l.value);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  auto payoff_of = [&](const std::vector<Rational>& t) {
    PayoffVector x = PayoffVector::zeros(m);
    for (std::size_t k = 0; k < dim; ++k) {
      const Pair& p = mu.pairs()[k];
      x[buyer(p.buyer)] = t[k];
      x[seller(p.seller)] = m.link(p).value - t[k];
    }
    return x;
  };

  CoreVertexSet out;
  if (dim == 0) {
    out.vertices.push_back(PayoffVector::zeros(m));
    return out;
  }
  std::vector<std::size_t> pick(dim);
  for (std::size_t k = 0; k < dim; ++k) pick[k] = k;
  while (rows.size() >= dim) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> c;
    for (std::size_t k : pick) {
      a.push_back(rows[k].a);
      c.push_back(rows[k].c);
    }
    if (auto t = detail::solve(std::move(a), std::move(c))) {
      bool feasible = true;
      for (const auto& r : rows) {
        Rational lhs;
        for (std::size_t k = 0; k < dim; ++k) lhs += r.a[k] * (*t)[k];
        if (lhs < r.c) { feasible = false; break; }
      }
      if (feasible) out.vertices.push_back(payoff_of(*t));
    }
    // Next combination in lexicographic order.
    std::size_t k = dim;
    while (k > 0 && pick[k - 1] == rows.size() - dim + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t r = k; r < dim; ++r) pick[r] = pick[r - 1] + 1;
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()),
                     out.vertices.end());
  return out;
}

/// Per-coordinate extremes over the core vertices.
inline PayoffBounds brute_stable_bounds(const Market& m) {
  const CoreVertexSet core = core_vertices(m);
  PayoffBounds b{core.vertices.front(), core.vertices.front()};
  for (const auto& x : core.vertices) {
    for (std::size_t f = 0; f < m.num_agents(); ++f) {
      const AgentId k = m.agent_at(f);
      if (x[k] > b.max[k]) b.max[k] = x[k];
      if (x[k] < b.min[k]) b.min[k] = x[k];
    }
  }
  return b;
}

/// Range of y_i - y_j over a vertex set of the core of G_{-ij}.
inline DifferenceInterval difference_range(const CoreVertexSet& core,
                                           const Pair& l) {
  DifferenceInterval r;
  bool first = true;
  for (const auto& y : core.vertices) {
    const Rational diff = y[buyer(l.buyer)] - y[seller(l.seller)];
    if (first || diff < r.lo) r.lo = diff;
    if (first || diff > r.hi) r.hi = diff;
    first = false;
  }
  return r;
}

/// x_i - x_j within the range of y_i - y_j over the submarket's core vertices.
inline bool brute_justifiable(const Market& m, const Pair& l,
                              const Rational& x_i, const Rational& x_j) {
  if (x_i + x_j != m.link(l).value) {
    throw Error(Errc::SplitMismatch, "split does not divide the link value");
  }
  return difference_range(core_vertices(remove_link(m, l)), l).contains(x_i - x_j);
}

/// d lies in the convex hull of the submarket core vertices projected onto
/// (x_i, x_j): on some segment or in some triangle of projected vertices.
inline bool hull_contains(const CoreVertexSet& core, const Pair& l,
                          const OutsideOptions& d) {
  struct Point { Rational x, y; };
  std::vector<Point> pts;
  for (const auto& v : core.vertices) {
    pts.push_back({v[buyer(l.buyer)], v[seller(l.seller)]});
  }
  const Point q{d.buyer, d.seller};
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  auto on_segment = [&](const Point& a, const Point& b) {
    if (!cross(a, b, q).is_zero()) return false;
    return min(a.x, b.x) <= q.x && q.x <= max(a.x, b.x) &&
           min(a.y, b.y) <= q.y && q.y <= max(a.y, b.y);
  };
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a; b < pts.size(); ++b) {
      if (on_segment(pts[a], pts[b])) return true;
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        const int s1 = cross(pts[a], pts[b], q).sign();
        const int s2 = cross(pts[b], pts[c], q).sign();
        const int s3 = cross(pts[c], pts[a], q).sign();
        if ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) {
          if (!cross(pts[a], pts[b], pts[c]).is_zero()) return true;
        }
      }
    }
  }
  return false;
}

inline bool brute_credible(const Market& m, const Pair& l,
                           const OutsideOptions& d) {
  m.link(l);
  return hull_contains(core_vertices(remove_link(m, l)), l, d);
}

inline bool brute_essential(const Market& m, const Pair& l) {
  m.link(l);
  const BruteOptimum opt = brute_optimal(m);
  return std::all_of(opt.matchings.begin(), opt.matchings.end(),
                     [&](const Matching& mu) { return mu.contains(l); });
}

// ---------------------------------------------------------------------------
// Random desk-scale markets.

struct MarketGenerator {
  std::size_t min_side = 1;
  std::size_t max_side = 4;
  double link_probability = 0.6;
  long max_value = 5;
  bool unit_surplus = false;

  Market operator()(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> side(min_side, max_side);
    std::bernoulli_distribution has_link(link_probability);
    std::uniform_int_distribution<long> value(0, max_value);
    const std::size_t nb = side(rng), ns = side(rng);
    std::vector<std::string> buyers, sellers;
    for (std::size_t i = 0; i < nb; ++i) buyers.push_back("b" + std::to_string(i + 1));
    for (std::size_t j = 0; j < ns; ++j) sellers.push_back("s" + std::to_string(j + 1));
    std::vector<Link> links;
    for (std::size_t i = 0; i < nb; ++i) {
      for (std::size_t j = 0; j < ns; ++j) {
        if (has_link(rng)) {
          links.push_back({i, j, unit_surplus ? Rational(1) : Rational(value(rng))});
        }
      }
    }
    return Market(std::move(buyers), std::move(sellers), std::move(links));
  }
};

/// Per-trial seed derived from the master seed (splitmix64 step).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace netbargain::oracle

#endif  // NETBARGAIN_ORACLE_HPP
