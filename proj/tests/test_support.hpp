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

// Seeded game generators and independent oracles shared by the unit and
// acceptance suites. Everything here stays off the library code paths it is
// used to check.

#ifndef CGT_TESTS_TEST_SUPPORT_HPP
#define CGT_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <vector>

#include "cgt/game.hpp"

namespace cgt_test {

/// Uniform [0,1] coalition values, empty coalition pinned to zero.
inline cgt::TUGame random_game(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (std::size_t s = 1; s < v.size(); ++s) v[s] = uni(rng);
  return cgt::TUGame(n, std::move(v));
}

/// Superadditive closure: v(S) becomes the best total any partition of S can
/// reach, computed over submasks in ascending order.
inline cgt::TUGame superadditive_cover(const cgt::TUGame& game) {
  std::vector<double> v = game.values();
  for (cgt::PlayerMask s = 1; s < v.size(); ++s)
    for (cgt::PlayerMask t = (s - 1) & s; t != 0; t = (t - 1) & s)
      v[s] = std::max(v[s], v[t] + v[s & ~t]);
  return cgt::TUGame(game.num_players(), std::move(v));
}

/// Strictly superadditive: the closure plus a merge bonus that grows with
/// coalition size, so every union strictly beats staying apart.
inline cgt::TUGame random_strictly_superadditive_game(std::mt19937_64& rng,
                                                      int n) {
  const cgt::TUGame cover = superadditive_cover(random_game(rng, n));
  std::uniform_real_distribution<double> uni(0.1, 0.5);
  const double bonus = uni(rng);
  std::vector<double> v = cover.values();
  for (cgt::PlayerMask s = 1; s < v.size(); ++s)
    v[s] += bonus * (std::popcount(s) - 1);
  return cgt::TUGame(n, std::move(v));
}

/// Convex (supermodular) game from nonnegative interaction masses:
/// v(S) = sum of m(T) over T subset of S, with every m(T) >= 0.
inline cgt::TUGame random_convex_game(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (std::size_t s = 1; s < v.size(); ++s) v[s] = uni(rng);
  // In-place subset-sum (zeta transform).
  for (int i = 0; i < n; ++i)
    for (cgt::PlayerMask s = 0; s < v.size(); ++s)
      if ((s >> i) & 1u) v[s] += v[s ^ (cgt::PlayerMask{1} << i)];
  return cgt::TUGame(n, std::move(v));
}

/// Uniformly random block assignment (not uniform over partitions, which is
/// fine for property fuzzing).
inline cgt::Partition random_partition(std::mt19937_64& rng, int n) {
  std::vector<cgt::Coalition> blocks;
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(blocks.size()));
    const int b = pick(rng);
    if (b == static_cast<int>(blocks.size()))
      blocks.push_back(cgt::Coalition{});
    blocks[static_cast<std::size_t>(b)] =
        blocks[static_cast<std::size_t>(b)].with(i);
  }
  return cgt::Partition(std::move(blocks), n);
}

/// Shapley oracle: enumerate all n! joining orders and average the marginal
/// contributions directly.
inline cgt::Allocation shapley_by_permutations(const cgt::TUGame& game) {
  const int n = game.num_players();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  cgt::Allocation phi(static_cast<std::size_t>(n), 0.0);
  long count = 0;
  do {
    cgt::PlayerMask joined = 0;
    double prev = 0.0;
    for (int i : order) {
      joined |= cgt::PlayerMask{1} << i;
      phi[static_cast<std::size_t>(i)] += game.value(joined) - prev;
      prev = game.value(joined);
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& p : phi) p /= static_cast<double>(count);
  return phi;
}

/// Kernel surplus oracle: plain double loop over all coalitions.
inline double surplus_oracle(const cgt::TUGame& game, const cgt::Allocation& x,
                             int i, int j) {
  double best = -1e300;
  for (cgt::PlayerMask s = 1; s <= game.full_mask(); ++s) {
    if (!((s >> i) & 1u) || ((s >> j) & 1u)) continue;
    double xs = 0.0;
    for (int p = 0; p < game.num_players(); ++p)
      if ((s >> p) & 1u) xs += x[static_cast<std::size_t>(p)];
    best = std::max(best, game.value(s) - xs);
  }
  return best;
}

}  // namespace cgt_test

#endif  // CGT_TESTS_TEST_SUPPORT_HPP
