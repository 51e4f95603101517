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

#ifndef NETBARGAIN_MARKET_HPP
#define NETBARGAIN_MARKET_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netbargain/error.hpp"
#include "netbargain/rational.hpp"

namespace netbargain {

enum class Side : std::uint8_t { Buyer, Seller };

struct AgentId {
  Side side = Side::Buyer;
  std::size_t index = 0;

  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

constexpr AgentId buyer(std::size_t i) { return {Side::Buyer, i}; }
constexpr AgentId seller(std::size_t j) { return {Side::Seller, j}; }

/// A (buyer, seller) index pair; the key of a link and the element of a
/// matching. Ordered lexicographically by (buyer, seller).
struct Pair {
  std::size_t buyer = 0;
  std::size_t seller = 0;

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

struct Link {
  std::size_t buyer = 0;
  std::size_t seller = 0;
  Rational value;

  Pair key() const { return {buyer, seller}; }
  AgentId buyer_id() const { return netbargain::buyer(buyer); }
  AgentId seller_id() const { return netbargain::seller(seller); }

  friend bool operator==(const Link&, const Link&) = default;
};

/// A bipartite trading network with link valuations: the pair (G, v).
/// Immutable after construction; links are kept sorted by (buyer, seller).
class Market {
 public:
  Market() = default;

  /// Validates names (unique across both sides), link endpoints, duplicate
  /// links and nonnegativity of values.
  Market(std::vector<std::string> buyers, std::vector<std::string> sellers,
         std::vector<Link> links)
      : buyers_(std::move(buyers)),
        sellers_(std::move(sellers)),
        links_(std::move(links)) {
    std::unordered_set<std::string> seen;
    for (const auto* names : {&buyers_, &sellers_}) {
      for (const auto& name : *names) {
        if (!seen.insert(name).second) {
          throw Error(Errc::DuplicateAgent, "agent \"" + name + "\"");
        }
      }
    }
    for (const auto& l : links_) {
      if (l.buyer >= buyers_.size() || l.seller >= sellers_.size()) {
        throw Error(Errc::UnknownAgent, "link endpoint out of range");
      }
      if (l.value.sign() < 0) {
        throw Error(Errc::NegativeValue, "link value " + l.value.str());
      }
    }
    std::sort(links_.begin(), links_.end(),
              [](const Link& a, const Link& b) { return a.key() < b.key(); });
    for (std::size_t k = 1; k < links_.size(); ++k) {
      if (links_[k - 1].key() == links_[k].key()) {
        throw Error(Errc::DuplicateLink,
                    "link " + buyers_[links_[k].buyer] + "-" +
                        sellers_[links_[k].seller]);
      }
    }
    index_();
  }

  std::size_t num_buyers() const { return buyers_.size(); }
  std::size_t num_sellers() const { return sellers_.size(); }
  std::size_t num_agents() const { return buyers_.size() + sellers_.size(); }
  bool empty() const { return num_agents() == 0; }

  std::span<const std::string> buyer_names() const { return buyers_; }
  std::span<const std::string> seller_names() const { return sellers_; }
  std::span<const Link> links() const { return links_; }

  bool contains(const AgentId& k) const {
    return k.index < (k.side == Side::Buyer ? buyers_.size() : sellers_.size());
  }

  const std::string& name(const AgentId& k) const {
    require_agent(k);
    return k.side == Side::Buyer ? buyers_[k.index] : sellers_[k.index];
  }

  std::string link_name(const Pair& p) const {
    return name(buyer(p.buyer)) + "-" + name(seller(p.seller));
  }

  std::optional<AgentId> find_agent(std::string_view agent_name) const {
    for (std::size_t i = 0; i < buyers_.size(); ++i) {
      if (buyers_[i] == agent_name) return buyer(i);
    }
    for (std::size_t j = 0; j < sellers_.size(); ++j) {
      if (sellers_[j] == agent_name) return seller(j);
    }
    return std::nullopt;
  }

  const Link* find_link(const Pair& p) const {
    auto it = std::lower_bound(
        links_.begin(), links_.end(), p,
        [](const Link& l, const Pair& key) { return l.key() < key; });
    if (it == links_.end() || it->key() != p) return nullptr;
    return &*it;
  }

  const Link& link(const Pair& p) const {
    const Link* l = find_link(p);
    if (l == nullptr) {
      throw Error(Errc::LinkNotPresent,
                  "no link (" + std::to_string(p.buyer) + "," +
                      std::to_string(p.seller) + ")");
    }
    return *l;
  }

  /// Indices into links() of every link incident to k.
  std::span<const std::size_t> incident(const AgentId& k) const {
    require_agent(k);
    return k.side == Side::Buyer ? buyer_links_[k.index]
                                 : seller_links_[k.index];
  }

  /// Position of k in the global agent order: buyers, then sellers.
  std::size_t flat_index(const AgentId& k) const {
    return k.side == Side::Buyer ? k.index : buyers_.size() + k.index;
  }
  AgentId agent_at(std::size_t flat) const {
    return flat < buyers_.size() ? buyer(flat)
                                 : seller(flat - buyers_.size());
  }

  bool is_unit_surplus() const {
    return std::all_of(links_.begin(), links_.end(),
                       [](const Link& l) { return l.value == Rational(1); });
  }

  void require_agent(const AgentId& k) const {
    if (!contains(k)) {
      throw Error(Errc::UnknownAgent,
                  std::string(k.side == Side::Buyer ? "buyer" : "seller") +
                      " index " + std::to_string(k.index));
    }
  }

  /// Same agents, links filtered by `keep`. No revalidation needed.
  template <typename Pred>
  Market filter_links(Pred keep) const {
    Market out;
    out.buyers_ = buyers_;
    out.sellers_ = sellers_;
    for (const auto& l : links_) {
      if (keep(l)) out.links_.push_back(l);
    }
    out.index_();
    return out;
  }

  friend bool operator==(const Market& a, const Market& b) {
    return a.buyers_ == b.buyers_ && a.sellers_ == b.sellers_ &&
           a.links_ == b.links_;
  }

 private:
  void index_() {
    buyer_links_.assign(buyers_.size(), {});
    seller_links_.assign(sellers_.size(), {});
    for (std::size_t k = 0; k < links_.size(); ++k) {
      buyer_links_[links_[k].buyer].push_back(k);
      seller_links_[links_[k].seller].push_back(k);
    }
  }

  std::vector<std::string> buyers_;
  std::vector<std::string> sellers_;
  std::vector<Link> links_;
  std::vector<std::vector<std::size_t>> buyer_links_;
  std::vector<std::vector<std::size_t>> seller_links_;
};

/// A set of disjoint (buyer, seller) pairs, kept sorted.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      for (std::size_t l = k + 1; l < pairs_.size(); ++l) {
        if (pairs_[k].buyer == pairs_[l].buyer ||
            pairs_[k].seller == pairs_[l].seller) {
          throw Error(Errc::InvalidMatching, "agent matched twice");
        }
      }
    }
  }

  std::span<const Pair> pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  bool contains(const Pair& p) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), p);
  }

  std::optional<AgentId> partner(const AgentId& k) const {
    for (const auto& p : pairs_) {
      if (k.side == Side::Buyer && p.buyer == k.index) return seller(p.seller);
      if (k.side == Side::Seller && p.seller == k.index) return buyer(p.buyer);
    }
    return std::nullopt;
  }

  bool is_matched(const AgentId& k) const { return partner(k).has_value(); }

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) {
    return a.pairs_ <=> b.pairs_;
  }

 private:
  std::vector<Pair> pairs_;
};

/// Payoff per agent, indexed by AgentId.
class PayoffVector {
 public:
  PayoffVector() = default;
  PayoffVector(std::size_t num_buyers, std::size_t num_sellers)
      : buyers_(num_buyers), sellers_(num_sellers) {}
  static PayoffVector zeros(const Market& m) {
    return PayoffVector(m.num_buyers(), m.num_sellers());
  }

  std::size_t num_buyers() const { return buyers_.size(); }
  std::size_t num_sellers() const { return sellers_.size(); }

  Rational& operator[](const AgentId& k) {
    return k.side == Side::Buyer ? buyers_.at(k.index) : sellers_.at(k.index);
  }
  const Rational& operator[](const AgentId& k) const {
    return k.side == Side::Buyer ? buyers_.at(k.index) : sellers_.at(k.index);
  }

  std::span<const Rational> buyers() const { return buyers_; }
  std::span<const Rational> sellers() const { return sellers_; }

  Rational total() const {
    Rational sum;
    for (const auto& x : buyers_) sum += x;
    for (const auto& x : sellers_) sum += x;
    return sum;
  }

  bool conforms_to(const Market& m) const {
    return buyers_.size() == m.num_buyers() &&
           sellers_.size() == m.num_sellers();
  }

  /// Elementwise a + t (b - a).
  static PayoffVector lerp(const PayoffVector& a, const PayoffVector& b,
                           const Rational& t) {
    PayoffVector out = a;
    for (std::size_t i = 0; i < out.buyers_.size(); ++i) {
      out.buyers_[i] += t * (b.buyers_.at(i) - a.buyers_[i]);
    }
    for (std::size_t j = 0; j < out.sellers_.size(); ++j) {
      out.sellers_[j] += t * (b.sellers_.at(j) - a.sellers_[j]);
    }
    return out;
  }

  friend bool operator==(const PayoffVector&, const PayoffVector&) = default;
  friend auto operator<=>(const PayoffVector& a, const PayoffVector& b) {
    if (auto c = a.buyers_ <=> b.buyers_; c != 0) return c;
    return a.sellers_ <=> b.sellers_;
  }

 private:
  std::vector<Rational> buyers_;
  std::vector<Rational> sellers_;
};

struct Outcome {
  Matching matching;
  PayoffVector payoffs;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Throws InvalidMatching unless every pair of `mu` is a link of `m`.
inline void validate_matching(const Market& m, const Matching& mu) {
  for (const auto& p : mu.pairs()) {
    if (p.buyer >= m.num_buyers() || p.seller >= m.num_sellers() ||
        m.find_link(p) == nullptr) {
      throw Error(Errc::InvalidMatching,
                  "pair (" + std::to_string(p.buyer) + "," +
                      std::to_string(p.seller) + ") is not a link");
    }
  }
}

inline Rational matching_surplus(const Market& m, const Matching& mu) {
  validate_matching(m, mu);
  Rational total;
  for (const auto& p : mu.pairs()) total += m.link(p).value;
  return total;
}

// ---------------------------------------------------------------------------
// Subgraph constructions. Agents are always retained so payoff vectors over a
// submarket stay indexable by the host market's agents.

/// (G_{-ij}, v).
inline Market remove_link(const Market& m, const Pair& l) {
  m.link(l);
  return m.filter_links([&](const Link& x) { return x.key() != l; });
}

/// (G_{-k}, v): every link incident to k removed; k kept as an isolated node.
inline Market remove_agent(const Market& m, const AgentId& k) {
  m.require_agent(k);
  return m.filter_links([&](const Link& x) {
    return k.side == Side::Buyer ? x.buyer != k.index : x.seller != k.index;
  });
}

/// (G_{-i,-j}, v). Accepts the two agents in either order.
inline Market remove_pair(const Market& m, const AgentId& i,
                          const AgentId& j) {
  m.require_agent(i);
  m.require_agent(j);
  if (i.side == j.side) {
    throw Error(Errc::SameSide, "remove_pair needs one buyer and one seller");
  }
  const AgentId& b = i.side == Side::Buyer ? i : j;
  const AgentId& s = i.side == Side::Buyer ? j : i;
  return m.filter_links([&](const Link& x) {
    return x.buyer != b.index && x.seller != s.index;
  });
}

// ---------------------------------------------------------------------------
// Feasibility and stability.

inline void require_conforming(const Market& m, const Outcome& o) {
  if (!o.payoffs.conforms_to(m)) {
    throw Error(Errc::DimensionMismatch,
                "payoff vector has " + std::to_string(o.payoffs.num_buyers()) +
                    "+" + std::to_string(o.payoffs.num_sellers()) +
                    " entries, market has " + std::to_string(m.num_buyers()) +
                    "+" + std::to_string(m.num_sellers()) + " agents");
  }
  validate_matching(m, o.matching);
}

/// Sum of payoffs equals the surplus of the matching, exactly.
inline bool is_feasible(const Market& m, const Outcome& o) {
  require_conforming(m, o);
  return o.payoffs.total() == matching_surplus(m, o.matching);
}

struct StabilityViolation {
  enum class Kind { NegativePayoff, BlockingLink };
  Kind kind = Kind::NegativePayoff;
  AgentId agent;  // NegativePayoff
  Pair link;      // BlockingLink
  /// Amount by which the constraint fails (always > 0).
  Rational deficit;
};

struct StabilityReport {
  bool stable = true;
  std::vector<StabilityViolation> violations;
};

/// Checks x >= 0 and x_i + x_j >= v_ij over every link of G, matched ones
/// included. Rejects infeasible outcomes.
inline StabilityReport is_stable(const Market& m, const Outcome& o) {
  if (!is_feasible(m, o)) {
    throw Error(Errc::InfeasibleOutcome,
                "payoffs sum to " + o.payoffs.total().str() +
                    " but the matching generates " +
                    matching_surplus(m, o.matching).str());
  }
  StabilityReport report;
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    const AgentId k = m.agent_at(f);
    if (o.payoffs[k].sign() < 0) {
      report.violations.push_back({StabilityViolation::Kind::NegativePayoff,
                                   k, {}, -o.payoffs[k]});
    }
  }
  for (const auto& l : m.links()) {
    const Rational slack =
        o.payoffs[l.buyer_id()] + o.payoffs[l.seller_id()] - l.value;
    if (slack.sign() < 0) {
      report.violations.push_back(
          {StabilityViolation::Kind::BlockingLink, {}, l.key(), -slack});
    }
  }
  report.stable = report.violations.empty();
  return report;
}

}  // namespace netbargain

#endif  // NETBARGAIN_MARKET_HPP
