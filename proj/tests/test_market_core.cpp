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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace fixtures;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InternalConsistency;
}

std::vector<Pair> keys(const Market& m) {
  std::vector<Pair> out;
  for (const auto& l : m.links()) out.push_back(l.key());
  return out;
}

}  // namespace

TEST(Market, FourLineShape) {
  const Market m = four_line();
  EXPECT_EQ(m.num_agents(), 4u);
  EXPECT_EQ(m.links().size(), 3u);
  EXPECT_TRUE(m.is_unit_surplus());
  EXPECT_EQ(m.link_name(P(m, "3", "2")), "3-2");
}

TEST(Market, RejectsBadConstruction) {
  EXPECT_EQ(code_of([] { Market({"a"}, {"a"}, {}); }), Errc::DuplicateAgent);
  EXPECT_EQ(code_of([] { Market({"a"}, {"b"}, {{0, 1, Rational(1)}}); }), Errc::UnknownAgent);
  EXPECT_EQ(code_of([] { Market({"a"}, {"b"}, {{0, 0, Rational(-1)}}); }), Errc::NegativeValue);
  EXPECT_EQ(code_of([] { Market({"a"}, {"b"}, {{0, 0, Rational(1)}, {0, 0, Rational(2)}}); }),
            Errc::DuplicateLink);
}

TEST(Market, ZeroValueLinksAreLegal) {
  const Market m = single_link("0");
  EXPECT_EQ(m.links().front().value, Rational(0));
}

TEST(RemoveLink, KeepsIsolatedAgents) {
  const Market m = four_line();
  const Market sub = remove_link(m, P(m, "1", "2"));
  EXPECT_EQ(sub.num_agents(), 4u);
  EXPECT_EQ(keys(sub), (std::vector<Pair>{P(m, "3", "2"), P(m, "3", "4")}));

  const Market one = single_link();
  const Market bare = remove_link(one, {0, 0});
  EXPECT_EQ(bare.num_agents(), 2u);
  EXPECT_TRUE(bare.links().empty());

  EXPECT_EQ(code_of([&] { remove_link(m, P(m, "1", "4")); }), Errc::LinkNotPresent);
}

TEST(RemoveAgent, DropsIncidentLinks) {
  const Market m = four_line();
  EXPECT_EQ(keys(remove_agent(m, A(m, "1"))),
            (std::vector<Pair>{P(m, "3", "2"), P(m, "3", "4")}));
  EXPECT_EQ(keys(remove_agent(m, A(m, "2"))), (std::vector<Pair>{P(m, "3", "4")}));
  EXPECT_EQ(remove_agent(m, A(m, "2")).num_agents(), 4u);
  const Market empty({}, {}, {});
  EXPECT_EQ(code_of([&] { remove_agent(empty, buyer(0)); }), Errc::UnknownAgent);
}

TEST(RemovePair, EitherOrderAndSameSideRejected) {
  const Market m = four_line();
  EXPECT_EQ(keys(remove_pair(m, A(m, "1"), A(m, "2"))), (std::vector<Pair>{P(m, "3", "4")}));
  EXPECT_EQ(keys(remove_pair(m, A(m, "2"), A(m, "1"))), (std::vector<Pair>{P(m, "3", "4")}));
  const Market sq = square();
  EXPECT_EQ(keys(remove_pair(sq, A(sq, "1"), A(sq, "2"))), (std::vector<Pair>{P(sq, "3", "4")}));
  EXPECT_EQ(code_of([&] { remove_pair(m, A(m, "1"), A(m, "3")); }), Errc::SameSide);
}

TEST(RemoveLink, CommutesAndMatchesAgentRemoval) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Market m = oracle::MarketGenerator{}(rng);
    for (const auto& a : m.links()) {
      for (const auto& b : m.links()) {
        if (a.key() == b.key()) continue;
        EXPECT_EQ(remove_link(remove_link(m, a.key()), b.key()),
                  remove_link(remove_link(m, b.key()), a.key()));
      }
    }
    for (std::size_t f = 0; f < m.num_agents(); ++f) {
      const AgentId k = m.agent_at(f);
      Market by_links = m;
      for (std::size_t idx : m.incident(k)) by_links = remove_link(by_links, m.links()[idx].key());
      EXPECT_EQ(remove_agent(m, k), by_links);
    }
  }
}

TEST(Matching, RejectsRepeatedAgents) {
  EXPECT_THROW(Matching({{0, 0}, {0, 1}}), Error);
  EXPECT_THROW(Matching({{0, 1}, {1, 1}}), Error);
  const Matching mu({{1, 0}, {0, 1}});
  EXPECT_EQ(mu.pairs().front(), (Pair{0, 1}));
  EXPECT_EQ(mu.partner(seller(0)), buyer(1));
  EXPECT_FALSE(mu.is_matched(buyer(2)));
}

TEST(Feasibility, Examples) {
  const Market m = four_line();
  EXPECT_TRUE(is_feasible(m, O(m, {{"1", "2"}, {"3", "4"}},
                              {{"1", "1/2"}, {"2", "1/2"}, {"3", "1/2"}, {"4", "1/2"}})));
  EXPECT_FALSE(is_feasible(m, O(m, {{"1", "2"}, {"3", "4"}},
                               {{"1", "1"}, {"2", "1"}, {"3", "1"}, {"4", "1"}})));
  const Market empty({}, {}, {});
  EXPECT_TRUE(is_feasible(empty, {Matching(), PayoffVector::zeros(empty)}));
  EXPECT_EQ(code_of([&] { is_feasible(m, {Matching(), PayoffVector(1, 1)}); }),
            Errc::DimensionMismatch);
  EXPECT_EQ(code_of([&] { is_feasible(m, {M(m, {{"1", "4"}}), PayoffVector::zeros(m)}); }),
            Errc::InvalidMatching);
}

TEST(Stability, Examples) {
  const Market m = four_line();
  EXPECT_TRUE(is_stable(m, O(m, {{"1", "2"}, {"3", "4"}}, {{"2", "1"}, {"4", "1"}})).stable);
  EXPECT_TRUE(is_stable(m, O(m, {{"1", "2"}, {"3", "4"}}, {{"1", "1"}, {"3", "1"}})).stable);

  const StabilityReport r = is_stable(m, O(m, {{"1", "2"}, {"3", "4"}}, {{"1", "1"}, {"4", "1"}}));
  EXPECT_FALSE(r.stable);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, StabilityViolation::Kind::BlockingLink);
  EXPECT_EQ(r.violations[0].link, P(m, "3", "2"));
  EXPECT_EQ(r.violations[0].deficit, Rational(1));

  const Market t = three_line();
  EXPECT_TRUE(is_stable(t, O(t, {{"1", "2"}}, {{"2", "1"}})).stable);
}

TEST(Stability, ReportsNegativePayoffs) {
  const Market m = single_link();
  const StabilityReport r = is_stable(m, O(m, {{"b", "s"}}, {{"b", "-1"}, {"s", "2"}}));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, StabilityViolation::Kind::NegativePayoff);
  EXPECT_EQ(r.violations[0].agent, A(m, "b"));
  EXPECT_EQ(r.violations[0].deficit, Rational(1));
}

TEST(Stability, RejectsInfeasibleOutcomes) {
  const Market m = four_line();
  EXPECT_EQ(code_of([&] { is_stable(m, O(m, {{"1", "2"}}, {{"1", "1"}, {"2", "1"}})); }),
            Errc::InfeasibleOutcome);
}

// Stable outcomes split matched links exactly and pay unmatched agents 0.
TEST(Stability, StableOutcomesSplitExactly) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Market m = oracle::MarketGenerator{}(rng);
    const auto opt = oracle::brute_optimal(m);
    for (const auto& x : oracle::core_vertices(m).vertices) {
      for (const auto& mu : opt.matchings) {
        const Outcome o{mu, x};
        ASSERT_TRUE(is_stable(m, o).stable);
        for (const auto& p : mu.pairs()) {
          EXPECT_EQ(x[buyer(p.buyer)] + x[seller(p.seller)], m.link(p).value);
        }
        for (std::size_t f = 0; f < m.num_agents(); ++f) {
          if (!mu.is_matched(m.agent_at(f))) {
            EXPECT_TRUE(x[m.agent_at(f)].is_zero());
          }
        }
      }
    }
  }
}
