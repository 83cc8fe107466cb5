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

#ifndef CGT_GAME_HPP
#define CGT_GAME_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgt {

/// Players are 0-based indices. A coalition is a bitmask with bit i set when
/// player i is a member, so a game on n players has 2^n coalitions and the
/// mask doubles as an index into a dense value table.
using PlayerMask = std::uint32_t;

/// Exact solvers work on full 2^n tables; beyond this the tables themselves
/// become unreasonable for a desk-scale tool.
inline constexpr int kMaxExactPlayers = 20;

/// Default tolerance for equality comparisons between utilities:
/// |a - b| <= kTol * max(1, |a|, |b|).
inline constexpr double kTol = 1e-9;

inline bool nearly_equal(double a, double b, double tol = kTol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// a >= b up to the scaled tolerance.
inline bool nearly_geq(double a, double b, double tol = kTol) {
  return a >= b - tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Strict comparison used by preference orders; improvements smaller than the
/// tolerance count as ties.
inline bool strictly_greater(double a, double b, double tol = kTol) {
  return a > b + tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// A subset of the player set, encoded as a bitmask.
struct Coalition {
  PlayerMask mask = 0;

  constexpr Coalition() = default;
  constexpr explicit Coalition(PlayerMask m) : mask(m) {}

  static Coalition of(std::initializer_list<int> players) {
    PlayerMask m = 0;
    for (int p : players) m |= PlayerMask{1} << p;
    return Coalition{m};
  }

  constexpr bool contains(int player) const { return (mask >> player) & 1u; }
  constexpr bool empty() const { return mask == 0; }
  constexpr int size() const { return std::popcount(mask); }

  constexpr Coalition with(int player) const {
    return Coalition{mask | (PlayerMask{1} << player)};
  }
  constexpr Coalition without(int player) const {
    return Coalition{mask & ~(PlayerMask{1} << player)};
  }
  constexpr bool subset_of(Coalition other) const {
    return (mask & ~other.mask) == 0;
  }
  constexpr bool disjoint_with(Coalition other) const {
    return (mask & other.mask) == 0;
  }
  constexpr Coalition united(Coalition other) const {
    return Coalition{mask | other.mask};
  }
  constexpr Coalition intersected(Coalition other) const {
    return Coalition{mask & other.mask};
  }

  /// Lowest player index in the coalition; undefined for the empty set.
  constexpr int lowest() const { return std::countr_zero(mask); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (PlayerMask m = mask; m != 0; m &= m - 1)
      out.push_back(std::countr_zero(m));
    return out;
  }

  auto operator<=>(const Coalition&) const = default;
};

inline constexpr Coalition full_coalition(int num_players) {
  return Coalition{(PlayerMask{1} << num_players) - 1};
}

inline std::string to_string(Coalition c) {
  std::string s = "{";
  bool first = true;
  for (int p : c.members()) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(p);
  }
  return s + "}";
}

/// Per-player payoffs, indexed by player.
using Allocation = std::vector<double>;

/// A transferable-utility game in characteristic form: every coalition is
/// assigned a single real worth, stored densely with the coalition mask as
/// the index. The empty coalition is always worth zero and all entries must
/// be finite; construction validates both.
class TUGame {
 public:
  TUGame(int num_players, std::vector<double> values)
      : n_(num_players), values_(std::move(values)) {
    if (n_ < 1 || n_ > kMaxExactPlayers)
      throw std::invalid_argument("TUGame: player count must be in [1, " +
                                  std::to_string(kMaxExactPlayers) + "], got " +
                                  std::to_string(n_));
    if (values_.size() != (std::size_t{1} << n_))
      throw std::invalid_argument(
          "TUGame: length mismatch, expected 2^n = " +
          std::to_string(std::size_t{1} << n_) + " values, got " +
          std::to_string(values_.size()));
    if (values_[0] != 0.0)
      throw std::invalid_argument(
          "TUGame: nonzero empty coalition, v({}) must be 0");
    for (double v : values_)
      if (!std::isfinite(v))
        throw std::invalid_argument("TUGame: non-finite value in table");
  }

  int num_players() const { return n_; }
  PlayerMask full_mask() const { return (PlayerMask{1} << n_) - 1; }
  Coalition grand() const { return Coalition{full_mask()}; }

  double value(Coalition s) const { return values_[s.mask]; }
  double value(PlayerMask mask) const { return values_[mask]; }
  double grand_value() const { return values_.back(); }
  double singleton_value(int player) const {
    return values_[PlayerMask{1} << player];
  }

  const std::vector<double>& values() const { return values_; }

  bool operator==(const TUGame&) const = default;

 private:
  int n_;
  std::vector<double> values_;
};

inline void validate_allocation(const TUGame& game, const Allocation& x) {
  if (x.size() != static_cast<std::size_t>(game.num_players()))
    throw std::invalid_argument("allocation length does not match player count");
  for (double xi : x)
    if (!std::isfinite(xi))
      throw std::invalid_argument("allocation has a non-finite payoff");
}

/// Coalition payoff sums x(S) for every mask, built in O(2^n) by peeling the
/// lowest bit. Shared by the solution-concept checks.
inline std::vector<double> coalition_sums(const TUGame& game,
                                          const Allocation& x) {
  validate_allocation(game, x);
  std::vector<double> sums(std::size_t{1} << game.num_players(), 0.0);
  for (PlayerMask m = 1; m <= game.full_mask(); ++m)
    sums[m] = sums[m & (m - 1)] + x[static_cast<std::size_t>(std::countr_zero(m))];
  return sums;
}

/// True iff x is efficient (sums to v(N) within the scaled tolerance) and
/// individually rational (x_i >= v({i}) - 1e-9 for every player).
inline bool is_imputation(const TUGame& game, const Allocation& x,
                          double tol = kTol) {
  validate_allocation(game, x);
  double total = 0.0;
  for (double xi : x) total += xi;
  if (std::abs(total - game.grand_value()) >
      tol * std::max(1.0, std::abs(game.grand_value())))
    return false;
  for (int i = 0; i < game.num_players(); ++i)
    if (x[static_cast<std::size_t>(i)] < game.singleton_value(i) - tol)
      return false;
  return true;
}

/// A disjoint cover of the player set. Blocks are kept in canonical form:
/// sorted by their lowest member, no empty blocks.
class Partition {
 public:
  Partition(std::vector<Coalition> blocks, int num_players)
      : blocks_(std::move(blocks)), n_(num_players) {
    PlayerMask seen = 0;
    for (Coalition b : blocks_) {
      if (b.empty()) throw std::invalid_argument("Partition: empty block");
      if ((b.mask & seen) != 0)
        throw std::invalid_argument("Partition: overlapping blocks");
      seen |= b.mask;
    }
    if (seen != full_coalition(n_).mask)
      throw std::invalid_argument(
          "Partition: incomplete cover of the player set");
    std::sort(blocks_.begin(), blocks_.end(),
              [](Coalition a, Coalition b) { return a.lowest() < b.lowest(); });
  }

  static Partition singletons(int num_players) {
    std::vector<Coalition> blocks;
    blocks.reserve(static_cast<std::size_t>(num_players));
    for (int i = 0; i < num_players; ++i)
      blocks.push_back(Coalition{PlayerMask{1} << i});
    return Partition(std::move(blocks), num_players);
  }

  static Partition grand(int num_players) {
    return Partition({full_coalition(num_players)}, num_players);
  }

  const std::vector<Coalition>& blocks() const { return blocks_; }
  int num_players() const { return n_; }
  std::size_t num_blocks() const { return blocks_.size(); }

  Coalition block_of(int player) const {
    for (Coalition b : blocks_)
      if (b.contains(player)) return b;
    throw std::logic_error("Partition: player not covered");
  }

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Coalition> blocks_;
  int n_;
};

inline std::string to_string(const Partition& p) {
  std::string s = "[";
  bool first = true;
  for (Coalition b : p.blocks()) {
    if (!first) s += " ";
    first = false;
    s += to_string(b);
  }
  return s + "]";
}

}  // namespace cgt

#endif  // CGT_GAME_HPP
