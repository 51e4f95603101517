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

// Edmonds-Gallai structure of a unit-surplus market, computed combinatorially
// from one maximum matching M:
//
//   U  agents reachable from an M-free agent by an even alternating path
//      (exactly the agents some maximum matching leaves unmatched);
//   O  agents outside U adjacent to U;
//   P  the rest.
//
// A link lies in some maximum matching iff it is in M, one endpoint is in U,
// or both endpoints share a strongly connected component of the alternating
// digraph (non-matching links buyer -> seller, matching links seller ->
// buyer), i.e. the link sits on an even alternating cycle.

#ifndef NETBARGAIN_DECOMPOSITION_HPP
#define NETBARGAIN_DECOMPOSITION_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <numeric>
#include <string_view>
#include <vector>

#include "netbargain/error.hpp"
#include "netbargain/market.hpp"

namespace netbargain {

enum class AgentClass { UnderDemanded, OverDemanded, PerfectlyMatched };

constexpr std::string_view agent_class_name(AgentClass c) noexcept {
  switch (c) {
    case AgentClass::UnderDemanded: return "U";
    case AgentClass::OverDemanded: return "O";
    case AgentClass::PerfectlyMatched: return "P";
  }
  return "?";
}

class AgentClasses {
 public:
  AgentClasses() = default;
  AgentClasses(std::size_t num_buyers, std::size_t num_sellers)
      : buyers_(num_buyers, AgentClass::PerfectlyMatched),
        sellers_(num_sellers, AgentClass::PerfectlyMatched) {}

  AgentClass& operator[](const AgentId& k) {
    return k.side == Side::Buyer ? buyers_.at(k.index) : sellers_.at(k.index);
  }
  AgentClass operator[](const AgentId& k) const {
    return k.side == Side::Buyer ? buyers_.at(k.index) : sellers_.at(k.index);
  }

  friend bool operator==(const AgentClasses&, const AgentClasses&) = default;

 private:
  std::vector<AgentClass> buyers_;
  std::vector<AgentClass> sellers_;
};

struct OutOfPLink {
  Pair link;
  bool allowed = false;
};

struct LinkLabels {
  std::vector<Pair> allowed;    // within P
  std::vector<Pair> forbidden;  // within P
  std::vector<OutOfPLink> out_of_p;
};

struct ElementaryComponent {
  std::vector<AgentId> agents;  // global agent order
  std::vector<Pair> links;      // allowed links, sorted
};

struct DecompositionReport {
  AgentClasses classes;
  LinkLabels labels;
  std::vector<ElementaryComponent> components;
  std::vector<Pair> essential_links;
  std::size_t matching_size = 0;
};

namespace detail {

inline void require_unit_surplus(const Market& m) {
  if (!m.is_unit_surplus()) {
    throw Error(Errc::NotUnitSurplus,
                "every link value must equal 1 for the decomposition");
  }
}

class AlternatingStructure {
 public:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  explicit AlternatingStructure(const Market& m)
      : m_(m),
        mate_buyer_(m.num_buyers(), kFree),
        mate_seller_(m.num_sellers(), kFree),
        reach_buyer_(m.num_buyers(), false),
        reach_seller_(m.num_sellers(), false) {
    maximum_matching();
    even_reachability();
    components();
  }

  std::size_t matching_size() const { return size_; }

  bool under_demanded(const AgentId& k) const {
    return k.side == Side::Buyer ? reach_buyer_[k.index] : reach_seller_[k.index];
  }

  bool in_some_maximum_matching(const Link& l) const {
    return mate_buyer_[l.buyer] == l.seller || reach_buyer_[l.buyer] ||
           reach_seller_[l.seller] ||
           scc_[l.buyer] == scc_[m_.num_buyers() + l.seller];
  }

 private:
  // Kuhn's augmenting paths, iterative, buyers and links in index order.
  void maximum_matching() {
    for (std::size_t root = 0; root < m_.num_buyers(); ++root) {
      std::vector<std::size_t> parent_seller(m_.num_sellers(), kFree);
      std::vector<bool> seen(m_.num_sellers(), false);
      std::deque<std::size_t> queue{root};
      std::size_t end_seller = kFree;
      while (!queue.empty() && end_seller == kFree) {
        const std::size_t b = queue.front();
        queue.pop_front();
        for (std::size_t idx : m_.incident(buyer(b))) {
          const std::size_t s = m_.links()[idx].seller;
          if (seen[s]) continue;
          seen[s] = true;
          parent_seller[s] = b;
          if (mate_seller_[s] == kFree) {
            end_seller = s;
            break;
          }
          queue.push_back(mate_seller_[s]);
        }
      }
      for (std::size_t s = end_seller; s != kFree;) {
        const std::size_t b = parent_seller[s];
        const std::size_t next = mate_buyer_[b];
        mate_buyer_[b] = s;
        mate_seller_[s] = b;
        s = next;
      }
      if (end_seller != kFree) ++size_;
    }
  }

  void even_reachability() {
    std::deque<std::size_t> buyers, sellers;
    for (std::size_t b = 0; b < m_.num_buyers(); ++b) {
      if (mate_buyer_[b] == kFree) { reach_buyer_[b] = true; buyers.push_back(b); }
    }
    while (!buyers.empty()) {
      const std::size_t b = buyers.front();
      buyers.pop_front();
      for (std::size_t idx : m_.incident(buyer(b))) {
        const std::size_t s = m_.links()[idx].seller;
        const std::size_t next = mate_seller_[s];
        if (next == kFree) {
          throw Error(Errc::InternalConsistency, "augmenting path left behind");
        }
        if (!reach_buyer_[next]) { reach_buyer_[next] = true; buyers.push_back(next); }
      }
    }
    for (std::size_t s = 0; s < m_.num_sellers(); ++s) {
      if (mate_seller_[s] == kFree) { reach_seller_[s] = true; sellers.push_back(s); }
    }
    while (!sellers.empty()) {
      const std::size_t s = sellers.front();
      sellers.pop_front();
      for (std::size_t idx : m_.incident(seller(s))) {
        const std::size_t b = m_.links()[idx].buyer;
        const std::size_t next = mate_buyer_[b];
        if (next == kFree) {
          throw Error(Errc::InternalConsistency, "augmenting path left behind");
        }
        if (!reach_seller_[next]) { reach_seller_[next] = true; sellers.push_back(next); }
      }
    }
  }

  // Strongly connected components (Kosaraju) of the alternating digraph over
  // flat agent indices.
  void components() {
    const std::size_t n = m_.num_agents();
    const std::size_t nb = m_.num_buyers();
    std::vector<std::vector<std::size_t>> out(n), in(n);
    for (const auto& l : m_.links()) {
      const std::size_t b = l.buyer, s = nb + l.seller;
      if (mate_buyer_[l.buyer] == l.seller) {
        out[s].push_back(b);
        in[b].push_back(s);
      } else {
        out[b].push_back(s);
        in[s].push_back(b);
      }
    }
    std::vector<std::size_t> order;
    std::vector<bool> visited(n, false);
    for (std::size_t start = 0; start < n; ++start) {
      if (visited[start]) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
      visited[start] = true;
      while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < out[node].size()) {
          const std::size_t to = out[node][next++];
          if (!visited[to]) {
            visited[to] = true;
            stack.push_back({to, 0});
          }
        } else {
          order.push_back(node);
          stack.pop_back();
        }
      }
    }
    scc_.assign(n, kFree);
    std::size_t label = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (scc_[*it] != kFree) continue;
      std::vector<std::size_t> stack{*it};
      scc_[*it] = label;
      while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        for (std::size_t from : in[node]) {
          if (scc_[from] == kFree) {
            scc_[from] = label;
            stack.push_back(from);
          }
        }
      }
      ++label;
    }
  }

  const Market& m_;
  std::vector<std::size_t> mate_buyer_;
  std::vector<std::size_t> mate_seller_;
  std::vector<bool> reach_buyer_;
  std::vector<bool> reach_seller_;
  std::vector<std::size_t> scc_;
  std::size_t size_ = 0;
};

inline AgentClasses classify(const Market& m, const AlternatingStructure& alt) {
  AgentClasses classes(m.num_buyers(), m.num_sellers());
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    const AgentId k = m.agent_at(f);
    if (alt.under_demanded(k)) classes[k] = AgentClass::UnderDemanded;
  }
  for (const auto& l : m.links()) {
    const bool bu = classes[l.buyer_id()] == AgentClass::UnderDemanded;
    const bool su = classes[l.seller_id()] == AgentClass::UnderDemanded;
    if (bu && su) {
      throw Error(Errc::InternalConsistency, "two under-demanded agents linked");
    }
    if (bu) classes[l.seller_id()] = AgentClass::OverDemanded;
    if (su) classes[l.buyer_id()] = AgentClass::OverDemanded;
  }
  return classes;
}

inline LinkLabels label(const Market& m, const AlternatingStructure& alt,
                        const AgentClasses& classes) {
  LinkLabels labels;
  for (const auto& l : m.links()) {
    const bool allowed = alt.in_some_maximum_matching(l);
    if (classes[l.buyer_id()] == AgentClass::PerfectlyMatched &&
        classes[l.seller_id()] == AgentClass::PerfectlyMatched) {
      (allowed ? labels.allowed : labels.forbidden).push_back(l.key());
    } else {
      labels.out_of_p.push_back({l.key(), allowed});
    }
  }
  return labels;
}

inline std::vector<ElementaryComponent> split_components(
    const Market& m, const AgentClasses& classes, const LinkLabels& labels) {
  const std::size_t n = m.num_agents();
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::vector<bool> touched(n, false);
  for (const auto& p : labels.allowed) {
    const std::size_t a = find(p.buyer), b = find(m.num_buyers() + p.seller);
    root[std::max(a, b)] = std::min(a, b);
    touched[p.buyer] = touched[m.num_buyers() + p.seller] = true;
  }
  std::vector<ElementaryComponent> out;
  std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t f = 0; f < n; ++f) {
    const AgentId k = m.agent_at(f);
    if (classes[k] != AgentClass::PerfectlyMatched) continue;
    if (!touched[f]) {
      throw Error(Errc::InternalConsistency,
                  "perfectly matched agent " + m.name(k) + " has no allowed link");
    }
    const std::size_t r = find(f);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].agents.push_back(k);
  }
  for (const auto& p : labels.allowed) out[slot[find(p.buyer)]].links.push_back(p);
  return out;
}

}  // namespace detail

inline AgentClasses classify_agents(const Market& m) {
  detail::require_unit_surplus(m);
  return detail::classify(m, detail::AlternatingStructure(m));
}

inline LinkLabels label_links(const Market& m) {
  detail::require_unit_surplus(m);
  const detail::AlternatingStructure alt(m);
  return detail::label(m, alt, detail::classify(m, alt));
}

inline DecompositionReport decompose(const Market& m) {
  detail::require_unit_surplus(m);
  const detail::AlternatingStructure alt(m);
  DecompositionReport r;
  r.matching_size = alt.matching_size();
  r.classes = detail::classify(m, alt);
  r.labels = detail::label(m, alt, r.classes);
  r.components = detail::split_components(m, r.classes, r.labels);
  for (const auto& c : r.components) {
    if (c.links.size() == 1) r.essential_links.push_back(c.links.front());
  }
  std::sort(r.essential_links.begin(), r.essential_links.end());
  return r;
}

inline std::vector<ElementaryComponent> elementary_components(const Market& m) {
  return decompose(m).components;
}

/// Links forming an elementary component of G_P on their own.
inline std::vector<Pair> essential_links_structural(const Market& m) {
  return decompose(m).essential_links;
}

}  // namespace netbargain

#endif  // NETBARGAIN_DECOMPOSITION_HPP
