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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cgt/coalition_structure.hpp"
#include "test_support.hpp"

using namespace cgt;

namespace {

TUGame majority3() {
  return TUGame(3, {0, 0, 0, 2.0 / 3, 0, 2.0 / 3, 2.0 / 3, 1.0});
}

}  // namespace

TEST_CASE("restricting a game to a block", "[structure]") {
  const TUGame g = majority3();
  SECTION("pair block becomes a dense 2-player table") {
    const RestrictedGame sub = restrict_game(g, Coalition::of({0, 1}));
    CHECK(sub.members == std::vector<int>{0, 1});
    CHECK(sub.game.num_players() == 2);
    CHECK(sub.game.value(PlayerMask{1}) == 0.0);
    CHECK(sub.game.value(PlayerMask{2}) == 0.0);
    CHECK(sub.game.grand_value() == Catch::Approx(2.0 / 3));
  }
  SECTION("full player set restricts to the parent table") {
    const RestrictedGame sub = restrict_game(g, g.grand());
    CHECK(sub.game == g);
  }
  SECTION("singleton block") {
    const RestrictedGame sub = restrict_game(g, Coalition::of({2}));
    CHECK(sub.game.num_players() == 1);
    CHECK(sub.game.grand_value() == 0.0);
  }
  SECTION("empty block rejected") {
    CHECK_THROWS_AS(restrict_game(g, Coalition{}), std::invalid_argument);
  }
}

TEST_CASE("per-block Shapley value", "[structure]") {
  const TUGame g = majority3();
  SECTION("pair-and-singleton structure splits the pair's worth") {
    const Partition b({Coalition::of({0, 1}), Coalition::of({2})}, 3);
    const Allocation x = aumann_dreze_value(g, b);
    CHECK(x[0] == Catch::Approx(1.0 / 3));
    CHECK(x[1] == Catch::Approx(1.0 / 3));
    CHECK(x[2] == Catch::Approx(0.0));
  }
  SECTION("grand structure collapses to the plain Shapley value") {
    const Allocation x = aumann_dreze_value(g, Partition::grand(3));
    const Allocation phi = shapley_exact(g);
    CHECK(x == phi);  // same code path, exact equality
  }
  SECTION("all singletons pay singleton worths") {
    const Allocation x = aumann_dreze_value(g, Partition::singletons(3));
    CHECK(x == Allocation{0, 0, 0});
  }
}

TEST_CASE("relative efficiency", "[structure]") {
  const TUGame g = majority3();
  const Partition b({Coalition::of({0, 1}), Coalition::of({2})}, 3);
  CHECK(relative_efficiency_check(g, b, {1.0 / 3, 1.0 / 3, 0}));
  CHECK_FALSE(relative_efficiency_check(g, b, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
  // With the grand structure this is just group rationality.
  CHECK(relative_efficiency_check(g, Partition::grand(3), {0.2, 0.3, 0.5}));
}

TEST_CASE("structure value properties on random games",
          "[structure][property]") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = size(rng);
    const TUGame g = cgt_test::random_game(rng, n);
    const Partition b = cgt_test::random_partition(rng, n);
    const Allocation x = aumann_dreze_value(g, b);

    // Each block hands out exactly its own worth.
    CHECK(relative_efficiency_check(g, b, x));

    // Values on coalitions crossing block borders do not matter.
    std::vector<double> tampered = g.values();
    for (PlayerMask s = 1; s < tampered.size(); ++s) {
      bool within = false;
      for (Coalition block : b.blocks())
        within = within || Coalition{s}.subset_of(block);
      if (!within) tampered[s] += 10.0;
    }
    CHECK(aumann_dreze_value(TUGame(n, tampered), b) == x);
  }
}
