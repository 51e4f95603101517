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

// Market and outcome files.
//
//   market:  { "buyers": ["b1", ...], "sellers": ["s1", ...],
//              "links": [ {"buyer": "b1", "seller": "s1", "value": "3/2"} ] }
//   outcome: { "matching": [["b1", "s1"], ...], "payoffs": {"b1": "1/2"} }
//
// Values are integer or "p/q" strings, or bare JSON integers.

#ifndef NETBARGAIN_IO_HPP
#define NETBARGAIN_IO_HPP

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netbargain/error.hpp"
#include "netbargain/market.hpp"
#include "netbargain/rational.hpp"

namespace netbargain {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& member(const Json& obj, const char* key,
                          const std::string& path) {
  if (!obj.is_object()) {
    throw Error(Errc::MalformedInput, "expected an object",
                path.empty() ? "/" : path);
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(Errc::MalformedInput, std::string("missing \"") + key + "\"",
                path.empty() ? "/" : path);
  }
  return *it;
}

inline const std::string& string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) throw Error(Errc::MalformedInput, "expected a string", path);
  return j.get_ref<const std::string&>();
}

inline Rational rational_at(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) {
      return Rational::parse(std::to_string(j.get<std::uint64_t>()));
    }
    return Rational::parse(std::to_string(j.get<std::int64_t>()));
  }
  if (!j.is_string()) {
    throw Error(Errc::MalformedValue,
                "expected an integer or a \"p/q\" string", path);
  }
  try {
    return Rational::parse(j.get_ref<const std::string&>());
  } catch (const Error& e) {
    throw Error(Errc::MalformedValue, e.what(), path);
  }
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::MalformedInput, e.what(), "/");
  }
}

inline AgentId agent_at_path(const Market& m, const Json& j,
                             const std::string& path) {
  const std::string& name = string_at(j, path);
  auto k = m.find_agent(name);
  if (!k) throw Error(Errc::UnknownAgent, "\"" + name + "\"", path);
  return *k;
}

}  // namespace detail

inline Market market_from_json(const Json& doc) {
  std::vector<std::string> names[2];
  const char* keys[2] = {"buyers", "sellers"};
  std::unordered_map<std::string, AgentId> lookup;
  for (int side = 0; side < 2; ++side) {
    const std::string path = std::string("/") + keys[side];
    const Json& list = detail::member(doc, keys[side], "");
    if (!list.is_array()) throw Error(Errc::MalformedInput, "expected an array", path);
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string item_path = path + "/" + std::to_string(k);
      const std::string& name = detail::string_at(list[k], item_path);
      const AgentId id{side == 0 ? Side::Buyer : Side::Seller, k};
      if (!lookup.emplace(name, id).second) {
        throw Error(Errc::DuplicateAgent, "\"" + name + "\"", item_path);
      }
      names[side].push_back(name);
    }
  }

  const Json& list = detail::member(doc, "links", "");
  if (!list.is_array()) throw Error(Errc::MalformedInput, "expected an array", "/links");
  std::vector<Link> links;
  std::vector<std::vector<bool>> seen(names[0].size(),
                                      std::vector<bool>(names[1].size()));
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = "/links/" + std::to_string(k);
    Link l;
    for (int side = 0; side < 2; ++side) {
      const char* key = side == 0 ? "buyer" : "seller";
      const std::string& name =
          detail::string_at(detail::member(list[k], key, path), path + "/" + key);
      auto it = lookup.find(name);
      if (it == lookup.end() ||
          it->second.side != (side == 0 ? Side::Buyer : Side::Seller)) {
        throw Error(Errc::UnknownAgent,
                    std::string("no ") + key + " named \"" + name + "\"",
                    path + "/" + key);
      }
      (side == 0 ? l.buyer : l.seller) = it->second.index;
    }
    l.value = detail::rational_at(detail::member(list[k], "value", path),
                                  path + "/value");
    if (l.value.sign() < 0) {
      throw Error(Errc::NegativeValue, "value " + l.value.str(), path + "/value");
    }
    if (seen[l.buyer][l.seller]) {
      throw Error(Errc::DuplicateLink,
                  names[0][l.buyer] + "-" + names[1][l.seller], path);
    }
    seen[l.buyer][l.seller] = true;
    links.push_back(std::move(l));
  }
  return Market(std::move(names[0]), std::move(names[1]), std::move(links));
}

inline Market parse_market(std::string_view text) {
  return market_from_json(detail::parse_json(text));
}

/// Canonical form: agents in declared order, links sorted by (buyer index,
/// seller index), values as reduced rational strings.
inline Json market_to_json(const Market& m) {
  Json doc;
  doc["buyers"] = Json::array();
  for (const auto& n : m.buyer_names()) doc["buyers"].push_back(n);
  doc["sellers"] = Json::array();
  for (const auto& n : m.seller_names()) doc["sellers"].push_back(n);
  doc["links"] = Json::array();
  for (const auto& l : m.links()) {
    Json link;
    link["buyer"] = m.name(l.buyer_id());
    link["seller"] = m.name(l.seller_id());
    link["value"] = l.value.str();
    doc["links"].push_back(std::move(link));
  }
  return doc;
}

inline std::string serialize_market(const Market& m) {
  return market_to_json(m).dump(2) + "\n";
}

inline Json matching_to_json(const Market& m, const Matching& mu) {
  Json out = Json::array();
  for (const auto& p : mu.pairs()) {
    out.push_back(Json::array({m.name(buyer(p.buyer)), m.name(seller(p.seller))}));
  }
  return out;
}

inline Json payoffs_to_json(const Market& m, const PayoffVector& x) {
  Json out = Json::object();
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    const AgentId k = m.agent_at(f);
    out[m.name(k)] = x[k].str();
  }
  return out;
}

inline Json outcome_to_json(const Market& m, const Outcome& o) {
  Json doc;
  doc["matching"] = matching_to_json(m, o.matching);
  doc["payoffs"] = payoffs_to_json(m, o.payoffs);
  return doc;
}

inline std::string serialize_outcome(const Market& m, const Outcome& o) {
  return outcome_to_json(m, o).dump(2) + "\n";
}

/// Every agent of `m` must have a payoff entry.
inline Outcome outcome_from_json(const Json& doc, const Market& m) {
  Outcome o;
  const Json& pairs = detail::member(doc, "matching", "");
  if (!pairs.is_array()) throw Error(Errc::MalformedInput, "expected an array", "/matching");
  std::vector<Pair> mu;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string path = "/matching/" + std::to_string(k);
    if (!pairs[k].is_array() || pairs[k].size() != 2) {
      throw Error(Errc::MalformedInput, "expected [buyer, seller]", path);
    }
    const AgentId b = detail::agent_at_path(m, pairs[k][0], path + "/0");
    const AgentId s = detail::agent_at_path(m, pairs[k][1], path + "/1");
    if (b.side != Side::Buyer || s.side != Side::Seller) {
      throw Error(Errc::SameSide, "expected [buyer, seller]", path);
    }
    if (m.find_link({b.index, s.index}) == nullptr) {
      throw Error(Errc::InvalidMatching, "pair is not a link", path);
    }
    mu.push_back({b.index, s.index});
  }
  try {
    o.matching = Matching(std::move(mu));
  } catch (const Error& e) {
    throw Error(Errc::InvalidMatching, e.what(), "/matching");
  }

  const Json& pay = detail::member(doc, "payoffs", "");
  if (!pay.is_object()) throw Error(Errc::MalformedInput, "expected an object", "/payoffs");
  o.payoffs = PayoffVector::zeros(m);
  std::vector<bool> given(m.num_agents());
  for (auto it = pay.begin(); it != pay.end(); ++it) {
    const std::string path = "/payoffs/" + it.key();
    auto k = m.find_agent(it.key());
    if (!k) throw Error(Errc::UnknownAgent, "\"" + it.key() + "\"", path);
    o.payoffs[*k] = detail::rational_at(it.value(), path);
    given[m.flat_index(*k)] = true;
  }
  for (std::size_t f = 0; f < m.num_agents(); ++f) {
    if (!given[f]) {
      throw Error(Errc::DimensionMismatch,
                  "no payoff for \"" + m.name(m.agent_at(f)) + "\"", "/payoffs");
    }
  }
  return o;
}

inline Outcome parse_outcome(std::string_view text, const Market& m) {
  return outcome_from_json(detail::parse_json(text), m);
}

}  // namespace netbargain

#endif  // NETBARGAIN_IO_HPP
