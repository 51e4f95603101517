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

#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"

using namespace fixtures;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(NETBARGAIN_MARKETS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_error(const std::string& text, Errc code, const std::string& path) {
  try {
    parse_market(text);
    ADD_FAILURE() << "no error for " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    EXPECT_EQ(e.path(), path) << e.what();
  }
}

}  // namespace

TEST(ParseMarket, FourLineFile) {
  const Market m = parse_market(slurp("four_line.json"));
  EXPECT_EQ(m, four_line());
  EXPECT_EQ(m.num_agents(), 4u);
  EXPECT_EQ(m.links().size(), 3u);
}

TEST(ParseMarket, EmptyFile) {
  const Market m = parse_market(slurp("empty.json"));
  EXPECT_TRUE(m.empty());
  EXPECT_EQ(m.num_agents(), 0u);
}

TEST(ParseMarket, SampleFilesMatchFixtures) {
  EXPECT_EQ(parse_market(slurp("three_line.json")), three_line());
  EXPECT_EQ(parse_market(slurp("square.json")), square());
  EXPECT_EQ(parse_market(slurp("three_class.json")), three_class());
  EXPECT_EQ(parse_market(slurp("single_link.json")), single_link());
  EXPECT_EQ(parse_market(slurp("weighted_three_line.json")), weighted_three_line());
  EXPECT_EQ(parse_market(slurp("weighted_path.json")), weighted_path());
}

TEST(ParseMarket, ValueForms) {
  const Market m = parse_market(
      R"({"buyers":["b"],"sellers":["s","t"],)"
      R"("links":[{"buyer":"b","seller":"s","value":"6/4"},{"buyer":"b","seller":"t","value":2}]})");
  EXPECT_EQ(m.links()[0].value, Rational(3, 2));
  EXPECT_EQ(m.links()[1].value, Rational(2));
}

TEST(ParseMarket, ErrorsCarryPaths) {
  const std::string head = R"({"buyers":["b"],"sellers":["s"],"links":[)";
  expect_error(head + R"({"buyer":"b","seller":"s","value":"-1"}]})", Errc::NegativeValue,
               "/links/0/value");
  expect_error(head + R"({"buyer":"b","seller":"s","value":1},{"buyer":"b","seller":"s","value":2}]})",
               Errc::DuplicateLink, "/links/1");
  expect_error(head + R"({"buyer":"x","seller":"s","value":1}]})", Errc::UnknownAgent,
               "/links/0/buyer");
  expect_error(head + R"({"buyer":"s","seller":"s","value":1}]})", Errc::UnknownAgent,
               "/links/0/buyer");
  expect_error(head + R"({"buyer":"b","seller":"s","value":1.5}]})", Errc::MalformedValue,
               "/links/0/value");
  expect_error(head + R"({"buyer":"b","seller":"s","value":"x"}]})", Errc::MalformedValue,
               "/links/0/value");
  expect_error(head + R"({"buyer":"b","seller":"s"}]})", Errc::MalformedInput, "/links/0");
  expect_error(R"({"buyers":["a"],"sellers":["a"],"links":[]})", Errc::DuplicateAgent,
               "/sellers/0");
  expect_error(R"({"buyers":["a"],"links":[]})", Errc::MalformedInput, "/");
  expect_error("{not json", Errc::MalformedInput, "/");
  expect_error(R"({"buyers":"a","sellers":[],"links":[]})", Errc::MalformedInput, "/buyers");
}

TEST(SerializeMarket, RoundTripsCanonicalMarkets) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Market m = oracle::MarketGenerator{}(rng);
    const std::string text = serialize_market(m);
    EXPECT_EQ(parse_market(text), m);
    EXPECT_EQ(serialize_market(parse_market(text)), text);
  }
}

TEST(SerializeMarket, SortsLinksAndReducesValues) {
  const Market m = parse_market(
      R"({"buyers":["b","c"],"sellers":["s"],)"
      R"("links":[{"buyer":"c","seller":"s","value":"2/4"},{"buyer":"b","seller":"s","value":"3"}]})");
  const Json doc = market_to_json(m);
  EXPECT_EQ(doc["links"][0]["buyer"], "b");
  EXPECT_EQ(doc["links"][1]["value"], "1/2");
}

TEST(ParseOutcome, FileAndErrors) {
  const Market m = four_line();
  const Outcome o = parse_outcome(slurp("four_line_third.json"), m);
  EXPECT_EQ(o, O(m, {{"1", "2"}, {"3", "4"}},
                 {{"1", "1/3"}, {"2", "2/3"}, {"3", "2/3"}, {"4", "1/3"}}));
  EXPECT_EQ(parse_outcome(serialize_outcome(m, o), m), o);

  auto code = [&](const std::string& text) {
    try {
      parse_outcome(text, m);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InternalConsistency;
  };
  const std::string pay = R"("payoffs":{"1":0,"2":0,"3":0,"4":0})";
  EXPECT_EQ(code(R"({"matching":[["1","4"]],)" + pay + "}"), Errc::InvalidMatching);
  EXPECT_EQ(code(R"({"matching":[["2","1"]],)" + pay + "}"), Errc::SameSide);
  EXPECT_EQ(code(R"({"matching":[["1","2"],["3","2"]],)" + pay + "}"), Errc::InvalidMatching);
  EXPECT_EQ(code(R"({"matching":[["9","2"]],)" + pay + "}"), Errc::UnknownAgent);
  EXPECT_EQ(code(R"({"matching":[],"payoffs":{"1":0}})"), Errc::DimensionMismatch);
  EXPECT_EQ(code(R"({"matching":[],"payoffs":{"1":0,"2":0,"3":0,"4":0,"5":0}})"),
            Errc::UnknownAgent);
}
