// Copyright 2026 The cgt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CGT_IO_HPP
#define CGT_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cgt/game.hpp"
#include "cgt/geometry.hpp"
#include "cgt/graph.hpp"
#include "cgt/netform.hpp"

namespace cgt {

using Json = nlohmann::json;

// Game file: {"players": n, "values": [v0, v1, ...]} with 2^n values indexed
// by coalition bitmask (bit i = 0-based player i). Graph file:
// {"players": n, "edges": [[i, j], ...]}. Partition file:
// {"blocks": [[members...], ...]}. Documented byte-exact in docs/formats.md.

inline Json game_to_json(const TUGame& game) {
  return Json{{"players", game.num_players()}, {"values", game.values()}};
}

inline TUGame game_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("players") || !j.contains("values"))
    throw std::invalid_argument(
        "game file must be an object with \"players\" and \"values\"");
  const int n = j.at("players").get<int>();
  const auto values = j.at("values").get<std::vector<double>>();
  return TUGame(n, values);
}

inline Json graph_to_json(const GameGraph& g) {
  Json edges = Json::array();
  for (auto [i, j] : g.edges()) edges.push_back(Json::array({i, j}));
  return Json{{"players", g.num_players()}, {"edges", edges}};
}

inline GameGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("players") || !j.contains("edges"))
    throw std::invalid_argument(
        "graph file must be an object with \"players\" and \"edges\"");
  const int n = j.at("players").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const Json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph edge must be a pair [i, j]");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return GameGraph(n, edges);
}

inline Json partition_to_json(const Partition& p) {
  Json blocks = Json::array();
  for (Coalition b : p.blocks()) blocks.push_back(b.members());
  return Json{{"blocks", blocks}};
}

inline Partition partition_from_json(const Json& j, int num_players) {
  if (!j.is_object() || !j.contains("blocks"))
    throw std::invalid_argument("partition file must contain \"blocks\"");
  std::vector<Coalition> blocks;
  for (const Json& jb : j.at("blocks")) {
    Coalition c;
    for (const Json& m : jb) c = c.with(m.get<int>());
    blocks.push_back(c);
  }
  return Partition(std::move(blocks), num_players);
}

/// Relay layout for network formation: positions, traffic, parameters, and
/// optionally the parent pointers of an already formed tree.
struct NetformScenario {
  std::vector<Point> positions;
  Point bs_position;
  std::vector<double> traffic;
  NetformParams params;
  std::optional<std::vector<int>> parents;
};

inline Json netform_to_json(const NetformScenario& sc) {
  Json relays = Json::array();
  for (std::size_t i = 0; i < sc.positions.size(); ++i)
    relays.push_back(Json{{"pos", {sc.positions[i].x, sc.positions[i].y}},
                          {"traffic", sc.traffic[i]}});
  Json out{{"bs", {sc.bs_position.x, sc.bs_position.y}},
           {"relays", relays},
           {"params",
            {{"hop_scale", sc.params.hop_scale},
             {"decay", sc.params.decay},
             {"link_cost", sc.params.link_cost},
             {"child_reward", sc.params.child_reward},
             {"max_links", sc.params.max_links}}}};
  if (sc.parents) out["parents"] = *sc.parents;
  return out;
}

inline NetformScenario netform_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("bs") || !j.contains("relays"))
    throw std::invalid_argument(
        "layout file must contain \"bs\" and \"relays\"");
  NetformScenario sc;
  sc.bs_position = {j.at("bs")[0].get<double>(), j.at("bs")[1].get<double>()};
  for (const Json& r : j.at("relays")) {
    sc.positions.push_back(
        {r.at("pos")[0].get<double>(), r.at("pos")[1].get<double>()});
    sc.traffic.push_back(r.value("traffic", 1.0));
  }
  if (j.contains("params")) {
    const Json& p = j.at("params");
    sc.params.hop_scale = p.value("hop_scale", sc.params.hop_scale);
    sc.params.decay = p.value("decay", sc.params.decay);
    sc.params.link_cost = p.value("link_cost", sc.params.link_cost);
    sc.params.child_reward = p.value("child_reward", sc.params.child_reward);
    sc.params.max_links = p.value("max_links", sc.params.max_links);
  }
  sc.params.validate();
  if (j.contains("parents")) {
    auto parents = j.at("parents").get<std::vector<int>>();
    if (parents.size() != sc.positions.size())
      throw std::invalid_argument("layout file: parents length mismatch");
    sc.parents = std::move(parents);
  }
  return sc;
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return Json::parse(in);  // parse errors carry byte position and message
}

inline TUGame load_game(const std::string& path) {
  return game_from_json(load_json(path));
}

/// Canonical single-line serialization used for emitted game files;
/// identical games always produce identical bytes.
inline std::string write_game_file(const TUGame& game) {
  return game_to_json(game).dump() + "\n";
}

}  // namespace cgt

#endif  // CGT_IO_HPP
