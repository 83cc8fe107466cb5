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

#ifndef CGT_GRAPH_HPP
#define CGT_GRAPH_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "cgt/game.hpp"
#include "cgt/solutions.hpp"

namespace cgt {

/// Undirected communication graph over the players. Restricting a game by
/// such a graph makes only connected groups productive.
class GameGraph {
 public:
  GameGraph(int num_players, const std::vector<std::pair<int, int>>& edges)
      : n_(num_players), adj_(static_cast<std::size_t>(num_players), 0) {
    if (n_ < 1 || n_ > kMaxExactPlayers)
      throw std::invalid_argument("GameGraph: bad player count");
    for (auto [i, j] : edges) {
      if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::invalid_argument("GameGraph: edge endpoint out of range");
      if (i == j) throw std::invalid_argument("GameGraph: self-loop");
      adj_[static_cast<std::size_t>(i)] |= PlayerMask{1} << j;
      adj_[static_cast<std::size_t>(j)] |= PlayerMask{1} << i;
    }
  }

  static GameGraph complete(int num_players) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < num_players; ++i)
      for (int j = i + 1; j < num_players; ++j) edges.emplace_back(i, j);
    return GameGraph(num_players, edges);
  }

  static GameGraph with_no_edges(int num_players) {
    return GameGraph(num_players, {});
  }

  int num_players() const { return n_; }
  bool has_edge(int i, int j) const {
    return (adj_[static_cast<std::size_t>(i)] >> j) & 1u;
  }
  PlayerMask neighbors(int i) const { return adj_[static_cast<std::size_t>(i)]; }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
  }

 private:
  int n_;
  std::vector<PlayerMask> adj_;
};

/// Maximal connected components of the subgraph induced by s, listed in
/// ascending order of their lowest member.
inline std::vector<Coalition> connected_components(Coalition s,
                                                   const GameGraph& g) {
  std::vector<Coalition> out;
  PlayerMask todo = s.mask;
  while (todo != 0) {
    const int seed = std::countr_zero(todo);
    PlayerMask comp = PlayerMask{1} << seed;
    for (;;) {
      PlayerMask grown = comp;
      for (PlayerMask m = comp; m != 0; m &= m - 1)
        grown |= g.neighbors(std::countr_zero(m)) & s.mask;
      if (grown == comp) break;
      comp = grown;
    }
    out.push_back(Coalition{comp});
    todo &= ~comp;
  }
  return out;
}

/// Graph-restricted game: a coalition is only worth what its connected parts
/// are worth separately, u(S) = sum of v over the components of S in g.
inline TUGame myerson_restricted_game(const TUGame& game, const GameGraph& g) {
  if (g.num_players() != game.num_players())
    throw std::invalid_argument("myerson_restricted_game: size mismatch");
  const PlayerMask full = game.full_mask();
  std::vector<double> u(std::size_t{1} << game.num_players(), 0.0);
  for (PlayerMask s = 1; s <= full; ++s) {
    double total = 0.0;
    for (Coalition comp : connected_components(Coalition{s}, g))
      total += game.value(comp);
    u[s] = total;
  }
  return TUGame(game.num_players(), std::move(u));
}

/// The Shapley value of the graph-restricted game.
inline Allocation myerson_value(const TUGame& game, const GameGraph& g) {
  return shapley_exact(myerson_restricted_game(game, g));
}

}  // namespace cgt

#endif  // CGT_GRAPH_HPP
