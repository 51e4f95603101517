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

// Named markets shared by the tests and the acceptance binary.

#ifndef NETBARGAIN_TESTS_FIXTURES_HPP
#define NETBARGAIN_TESTS_FIXTURES_HPP

#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "netbargain/netbargain.hpp"

namespace fixtures {

using namespace netbargain;

inline Rational R(const char* text) { return Rational::parse(text); }

inline Market build(std::vector<std::string> buyers, std::vector<std::string> sellers,
                    std::initializer_list<std::tuple<const char*, const char*, const char*>> links) {
  Market names(buyers, sellers, {});
  std::vector<Link> out;
  for (const auto& [b, s, v] : links) {
    out.push_back({names.find_agent(b)->index, names.find_agent(s)->index, R(v)});
  }
  return Market(std::move(buyers), std::move(sellers), std::move(out));
}

// Agents 1..4 on a line; odd agents buy.
inline Market four_line() {
  return build({"1", "3"}, {"2", "4"}, {{"1", "2", "1"}, {"3", "2", "1"}, {"3", "4", "1"}});
}
inline Market three_line() {
  return build({"1", "3"}, {"2"}, {{"1", "2", "1"}, {"3", "2", "1"}});
}
inline Market square() {
  return build({"1", "3"}, {"2", "4"},
               {{"1", "2", "1"}, {"3", "2", "1"}, {"3", "4", "1"}, {"1", "4", "1"}});
}
inline Market single_link(const char* v = "1") { return build({"b"}, {"s"}, {{"b", "s", v}}); }
inline Market weighted_three_line() {
  return build({"1", "3"}, {"2"}, {{"1", "2", "2"}, {"3", "2", "1"}});
}
inline Market weighted_path() {
  return build({"1", "3"}, {"2", "4"}, {{"1", "2", "2"}, {"3", "2", "1"}, {"3", "4", "1"}});
}
// 13 agents: U1..U3 under-demanded, O1, O2 over-demanded, P1..P8 perfectly
// matched in three elementary components.
inline Market three_class() {
  return build({"P1", "P3", "P5", "P7", "U1", "U2", "U3"}, {"P2", "P4", "P6", "P8", "O1", "O2"},
               {{"P5", "P4", "1"}, {"P1", "P4", "1"}, {"P5", "P6", "1"}, {"P3", "P4", "1"},
                {"P1", "P2", "1"}, {"P3", "P2", "1"}, {"P7", "P6", "1"}, {"P7", "P8", "1"},
                {"P3", "O2", "1"}, {"P1", "O1", "1"}, {"U3", "O2", "1"}, {"U1", "O1", "1"},
                {"U2", "O2", "1"}, {"U2", "O1", "1"}});
}

inline AgentId A(const Market& m, const std::string& name) { return *m.find_agent(name); }

inline Pair P(const Market& m, const std::string& b, const std::string& s) {
  return {A(m, b).index, A(m, s).index};
}

inline Matching M(const Market& m, std::initializer_list<std::pair<const char*, const char*>> ps) {
  std::vector<Pair> out;
  for (const auto& [b, s] : ps) out.push_back(P(m, b, s));
  return Matching(std::move(out));
}

inline PayoffVector X(const Market& m,
                      std::initializer_list<std::pair<const char*, const char*>> values) {
  PayoffVector x = PayoffVector::zeros(m);
  for (const auto& [name, v] : values) x[A(m, name)] = R(v);
  return x;
}

inline Outcome O(const Market& m, std::initializer_list<std::pair<const char*, const char*>> ps,
                 std::initializer_list<std::pair<const char*, const char*>> values) {
  return {M(m, ps), X(m, values)};
}

}  // namespace fixtures

#endif  // NETBARGAIN_TESTS_FIXTURES_HPP
