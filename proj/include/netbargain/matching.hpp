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

#ifndef NETBARGAIN_MATCHING_HPP
#define NETBARGAIN_MATCHING_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "netbargain/error.hpp"
#include "netbargain/market.hpp"
#include "netbargain/rational.hpp"

namespace netbargain {

struct MatchingResult {
  Matching matching;
  Rational surplus;
};

namespace detail {

/// Maximum-weight bipartite matching by the Hungarian method on the square
/// completion of the buyer x seller matrix (missing links weigh 0), with
/// exact rational potentials. O(n^3). Returned pairs are positive-value links.
inline MatchingResult hungarian(const Market& m) {
  const std::size_t n = std::max(m.num_buyers(), m.num_sellers());
  if (n == 0 || m.links().empty()) return {};

  // cost[i][j] = -v_ij, 1-based rows/columns.
  std::vector<std::vector<Rational>> cost(n + 1, std::vector<Rational>(n + 1));
  for (const auto& l : m.links()) cost[l.buyer + 1][l.seller + 1] = -l.value;

  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<Rational> minv(n + 1);
    std::vector<bool> minv_set(n + 1, false), used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of[j0];
      Rational delta;
      bool delta_set = false;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational cur = cost[i0][j] - u[i0] - v[j];
        if (!minv_set[j] || cur < minv[j]) {
          minv[j] = std::move(cur);
          minv_set[j] = true;
          way[j] = j0;
        }
        if (!delta_set || minv[j] < delta) {
          delta = minv[j];
          delta_set = true;
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<Pair> pairs;
  Rational surplus;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = row_of[j];
    if (i == 0 || i > m.num_buyers() || j > m.num_sellers()) continue;
    const Link* l = m.find_link({i - 1, j - 1});
    if (l != nullptr && l->value.sign() > 0) {
      pairs.push_back(l->key());
      surplus += l->value;
    }
  }
  return {Matching(std::move(pairs)), surplus};
}

}  // namespace detail

/// Names a submarket of a host market by what was removed from it.
struct SubmarketKey {
  std::vector<AgentId> removed_agents;  // sorted, unique
  std::vector<Pair> removed_links;      // sorted, unique

  SubmarketKey& without(const AgentId& k) {
    auto it = std::lower_bound(removed_agents.begin(), removed_agents.end(), k);
    if (it == removed_agents.end() || *it != k) removed_agents.insert(it, k);
    return *this;
  }
  SubmarketKey& without(const Pair& l) {
    auto it = std::lower_bound(removed_links.begin(), removed_links.end(), l);
    if (it == removed_links.end() || *it != l) removed_links.insert(it, l);
    return *this;
  }

  friend auto operator<=>(const SubmarketKey&, const SubmarketKey&) = default;
};

/// Memoized optimal surplus v_H for submarkets H of one host market. Markets
/// are immutable, so entries never go stale. Safe for concurrent callers.
class SurplusQueryCache {
 public:
  explicit SurplusQueryCache(Market m) : market_(std::move(m)) {}
  SurplusQueryCache(const SurplusQueryCache&) = delete;
  SurplusQueryCache& operator=(const SurplusQueryCache&) = delete;

  const Market& market() const { return market_; }

  Market submarket(const SubmarketKey& key) const {
    return market_.filter_links([&](const Link& l) {
      if (std::binary_search(key.removed_links.begin(),
                             key.removed_links.end(), l.key())) {
        return false;
      }
      return !std::binary_search(key.removed_agents.begin(),
                                 key.removed_agents.end(), l.buyer_id()) &&
             !std::binary_search(key.removed_agents.begin(),
                                 key.removed_agents.end(), l.seller_id());
    });
  }

  Rational surplus(const SubmarketKey& key) const {
    {
      std::shared_lock lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    Rational value = detail::hungarian(submarket(key)).surplus;
    std::unique_lock lock(mutex_);
    return memo_.emplace(key, std::move(value)).first->second;
  }

  /// v_G.
  Rational surplus() const { return surplus(SubmarketKey{}); }
  /// v_{G_{-k}}.
  Rational without_agent(const AgentId& k) const {
    market_.require_agent(k);
    return surplus(SubmarketKey{}.without(k));
  }
  /// v_{G_{-i,-j}}.
  Rational without_pair(const Pair& p) const {
    return surplus(SubmarketKey{}.without(buyer(p.buyer)).without(seller(p.seller)));
  }
  /// v_{G_{-ij}}.
  Rational without_link(const Pair& p) const {
    market_.link(p);
    return surplus(SubmarketKey{}.without(p));
  }

  std::size_t cached_entries() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

 private:
  Market market_;
  mutable std::shared_mutex mutex_;
  mutable std::map<SubmarketKey, Rational> memo_;
};

/// The canonical optimal matching: among optimal matchings that use only
/// positive-value links, the one whose sorted pair list is lexicographically
/// smallest. Buyers are fixed in index order, each to the smallest seller that
/// keeps some completion optimal, else left unmatched.
inline MatchingResult max_weight_matching(const SurplusQueryCache& cache) {
  const Market& m = cache.market();
  const Rational target = cache.surplus();
  Rational acc;
  SubmarketKey decided;
  std::vector<Pair> pairs;
  for (std::size_t b = 0; b < m.num_buyers(); ++b) {
    bool matched = false;
    for (std::size_t idx : m.incident(buyer(b))) {
      const Link& l = m.links()[idx];
      if (l.value.sign() <= 0 ||
          std::binary_search(decided.removed_agents.begin(),
                             decided.removed_agents.end(), l.seller_id())) {
        continue;
      }
      SubmarketKey next = decided;
      next.without(buyer(b)).without(l.seller_id());
      if (acc + l.value + cache.surplus(next) == target) {
        pairs.push_back(l.key());
        acc += l.value;
        decided = std::move(next);
        matched = true;
        break;
      }
    }
    if (!matched) decided.without(buyer(b));
  }
  if (acc != target) {
    throw Error(Errc::InternalConsistency, "canonical matching lost surplus");
  }
  return {Matching(std::move(pairs)), target};
}

inline MatchingResult max_weight_matching(const Market& m) {
  return max_weight_matching(SurplusQueryCache(m));
}

inline Rational optimal_surplus(const SurplusQueryCache& cache) {
  return cache.surplus();
}
inline Rational optimal_surplus(const Market& m) {
  return detail::hungarian(m).surplus;
}

inline bool is_optimal(const SurplusQueryCache& cache, const Matching& mu) {
  return matching_surplus(cache.market(), mu) == cache.surplus();
}
inline bool is_optimal(const Market& m, const Matching& mu) {
  return matching_surplus(m, mu) == optimal_surplus(m);
}

/// Every optimal matching (zero-value links included), sorted by pair list.
/// Throws CapExceeded once more than `cap` are found.
inline std::vector<Matching> enumerate_optimal_matchings(
    const SurplusQueryCache& cache, std::size_t cap) {
  const Market& m = cache.market();
  const Rational target = cache.surplus();
  std::vector<Matching> out;
  std::vector<Pair> current;

  auto recurse = [&](auto&& self, std::size_t b, const SubmarketKey& decided,
                     const Rational& acc) -> void {
    if (b == m.num_buyers()) {
      if (acc == target) {
        if (out.size() == cap) {
          throw Error(Errc::CapExceeded,
                      "more than " + std::to_string(cap) + " optimal matchings");
        }
        out.emplace_back(current);
      }
      return;
    }
    for (std::size_t idx : m.incident(buyer(b))) {
      const Link& l = m.links()[idx];
      if (std::binary_search(decided.removed_agents.begin(),
                             decided.removed_agents.end(), l.seller_id())) {
        continue;
      }
      SubmarketKey next = decided;
      next.without(buyer(b)).without(l.seller_id());
      const Rational with = acc + l.value;
      if (with + cache.surplus(next) == target) {
        current.push_back(l.key());
        self(self, b + 1, next, with);
        current.pop_back();
      }
    }
    SubmarketKey next = decided;
    next.without(buyer(b));
    if (acc + cache.surplus(next) == target) self(self, b + 1, next, acc);
  };
  recurse(recurse, 0, SubmarketKey{}, Rational{});
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Matching> enumerate_optimal_matchings(const Market& m,
                                                         std::size_t cap) {
  return enumerate_optimal_matchings(SurplusQueryCache(m), cap);
}

/// l belongs to some optimal matching: v_ij + v_{G_{-i,-j}} = v_G.
inline bool is_matchable_link(const SurplusQueryCache& cache, const Pair& l) {
  const Link& link = cache.market().link(l);
  return link.value + cache.without_pair(l) == cache.surplus();
}
inline bool is_matchable_link(const Market& m, const Pair& l) {
  return is_matchable_link(SurplusQueryCache(m), l);
}

/// l belongs to every optimal matching: v_{G_{-ij}} < v_G.
inline bool is_essential_link(const SurplusQueryCache& cache, const Pair& l) {
  return cache.without_link(l) < cache.surplus();
}
inline bool is_essential_link(const Market& m, const Pair& l) {
  return is_essential_link(SurplusQueryCache(m), l);
}

}  // namespace netbargain

#endif  // NETBARGAIN_MATCHING_HPP
