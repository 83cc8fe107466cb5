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

#ifndef CGT_COALITION_STRUCTURE_HPP
#define CGT_COALITION_STRUCTURE_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "cgt/game.hpp"
#include "cgt/solutions.hpp"

namespace cgt {

/// A game cut down to one block of a coalition structure: the sub-table over
/// the block's members, re-indexed densely so block member k sits at bit k.
struct RestrictedGame {
  TUGame game;
  std::vector<int> members;  // members[k] = global index of local player k
};

inline RestrictedGame restrict_game(const TUGame& game, Coalition block) {
  if (block.empty())
    throw std::invalid_argument("restrict_game: empty block");
  const std::vector<int> members = block.members();
  const int k = static_cast<int>(members.size());
  std::vector<double> values(std::size_t{1} << k, 0.0);
  for (PlayerMask local = 0; local < (PlayerMask{1} << k); ++local) {
    PlayerMask global = 0;
    for (int b = 0; b < k; ++b)
      if ((local >> b) & 1u)
        global |= PlayerMask{1} << members[static_cast<std::size_t>(b)];
    values[local] = game.value(global);
  }
  return {TUGame(k, std::move(values)), members};
}

/// Shapley value under an imposed coalition structure: each block is solved
/// as its own restricted game and the per-block payoffs are scattered back to
/// global player indices. With the grand-coalition structure this is exactly
/// the plain Shapley value.
inline Allocation aumann_dreze_value(const TUGame& game,
                                     const Partition& partition) {
  Allocation out(static_cast<std::size_t>(game.num_players()), 0.0);
  for (Coalition block : partition.blocks()) {
    const RestrictedGame sub = restrict_game(game, block);
    const Allocation phi = shapley_exact(sub.game);
    for (std::size_t k = 0; k < sub.members.size(); ++k)
      out[static_cast<std::size_t>(sub.members[k])] = phi[k];
  }
  return out;
}

/// Relative efficiency: within every block the payoffs sum to that block's
/// own worth.
inline bool relative_efficiency_check(const TUGame& game,
                                      const Partition& partition,
                                      const Allocation& x, double tol = kTol) {
  const std::vector<double> sums = coalition_sums(game, x);
  for (Coalition block : partition.blocks())
    if (!nearly_equal(sums[block.mask], game.value(block), tol)) return false;
  return true;
}

}  // namespace cgt

#endif  // CGT_COALITION_STRUCTURE_HPP
