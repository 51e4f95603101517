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

TEST(StableBounds, FourLine) {
  const Market m = four_line();
  EXPECT_EQ(max_stable_payoffs(m), X(m, {{"1", "1"}, {"2", "1"}, {"3", "1"}, {"4", "1"}}));
  EXPECT_EQ(min_stable_payoffs(m), PayoffVector::zeros(m));
}

TEST(StableBounds, ThreeLine) {
  const Market m = three_line();
  EXPECT_EQ(max_stable_payoffs(m), X(m, {{"2", "1"}}));
  EXPECT_EQ(min_stable_payoffs(m), X(m, {{"2", "1"}}));
}

TEST(StableBounds, WeightedThreeLine) {
  const Market m = weighted_three_line();
  EXPECT_EQ(max_stable_payoffs(m), X(m, {{"1", "1"}, {"2", "2"}}));
  EXPECT_EQ(min_stable_payoffs(m), X(m, {{"2", "1"}}));
}

TEST(StableBounds, SquareSingleLinkThreeClassAndEmpty) {
  const Market sq = square();
  const PayoffBounds b = stable_bounds(sq);
  EXPECT_EQ(b.max, X(sq, {{"1", "1"}, {"2", "1"}, {"3", "1"}, {"4", "1"}}));
  EXPECT_EQ(b.min, PayoffVector::zeros(sq));

  const Market one = single_link();
  EXPECT_EQ(stable_bounds(one).max, X(one, {{"b", "1"}, {"s", "1"}}));
  EXPECT_EQ(stable_bounds(one).min, PayoffVector::zeros(one));

  const Market f = three_class();
  const PayoffBounds fb = stable_bounds(f);
  for (const char* u : {"U1", "U2", "U3"}) {
    EXPECT_EQ(fb.max[A(f, u)], Rational(0));
    EXPECT_EQ(fb.min[A(f, u)], Rational(0));
  }
  for (const char* o : {"O1", "O2"}) {
    EXPECT_EQ(fb.max[A(f, o)], Rational(1));
    EXPECT_EQ(fb.min[A(f, o)], Rational(1));
  }

  const Market empty({}, {}, {});
  EXPECT_EQ(stable_bounds(empty).max, PayoffVector::zeros(empty));
  EXPECT_TRUE(buyer_optimal_outcome(empty).matching.empty());
  EXPECT_TRUE(seller_optimal_outcome(empty).matching.empty());
}

TEST(CoreMembership, Examples) {
  const Market m = four_line();
  EXPECT_TRUE(is_core_member(m, X(m, {{"1", "1"}, {"3", "1"}})));
  EXPECT_TRUE(is_core_member(m, X(m, {{"1", "1/3"}, {"2", "2/3"}, {"3", "2/3"}, {"4", "1/3"}})));
  EXPECT_FALSE(is_core_member(m, X(m, {{"1", "2"}})));
  EXPECT_THROW(is_core_member(m, PayoffVector(2, 1)), Error);
}

TEST(SideOptimalOutcomes, FourLine) {
  const Market m = four_line();
  EXPECT_EQ(buyer_optimal_outcome(m).payoffs, X(m, {{"1", "1"}, {"3", "1"}}));
  EXPECT_EQ(seller_optimal_outcome(m).payoffs, X(m, {{"2", "1"}, {"4", "1"}}));
}

TEST(StablePayoffProperties, AgreeWithCoreVertices) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 150; ++trial) {
    const Market m = oracle::MarketGenerator{}(rng);
    SCOPED_TRACE(serialize_market(m));
    const SurplusQueryCache cache(m);
    const PayoffBounds b = stable_bounds(cache);
    EXPECT_EQ(b, oracle::brute_stable_bounds(m));

    EXPECT_TRUE(is_stable(m, buyer_optimal_outcome(cache)).stable);
    EXPECT_TRUE(is_stable(m, seller_optimal_outcome(cache)).stable);
    EXPECT_TRUE(is_core_member(cache, PayoffVector::lerp(b.min, b.max, Rational(1, 2))));

    const auto optimal = enumerate_optimal_matchings(cache, 1u << 16);
    for (const auto& mu : optimal) {
      EXPECT_EQ(min_stable_payoffs(m, mu, b.max), b.min);
    }
    for (std::size_t f = 0; f < m.num_agents(); ++f) {
      const AgentId k = m.agent_at(f);
      EXPECT_GE(b.max[k], b.min[k]);
      EXPECT_GE(b.min[k].sign(), 0);
      bool sometimes_unmatched = false;
      for (const auto& mu : optimal) sometimes_unmatched |= !mu.is_matched(k);
      if (sometimes_unmatched) {
        EXPECT_TRUE(b.max[k].is_zero());
      }
    }
  }
}

TEST(CorePairSumRange, AgreesWithCoreVertices) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const Market m = oracle::MarketGenerator{}(rng);
    const auto core = oracle::core_vertices(m);
    const SurplusQueryCache cache(m);
    for (std::size_t i = 0; i < m.num_buyers(); ++i) {
      for (std::size_t j = 0; j < m.num_sellers(); ++j) {
        Rational lo = core.vertices[0][buyer(i)] + core.vertices[0][seller(j)];
        Rational hi = lo;
        for (const auto& y : core.vertices) {
          lo = min(lo, y[buyer(i)] + y[seller(j)]);
          hi = max(hi, y[buyer(i)] + y[seller(j)]);
        }
        const SumRange r = core_pair_sum_range(cache, {i, j});
        EXPECT_EQ(r.min, lo) << serialize_market(m);
        EXPECT_EQ(r.max, hi) << serialize_market(m);
      }
    }
  }
}
