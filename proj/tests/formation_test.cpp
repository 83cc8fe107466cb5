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

#include "cgt/formation.hpp"
#include "test_support.hpp"

using namespace cgt;

namespace {

// Singletons worth 1; {0,1}=4, {0,2}=3, {1,2}=3; the full group collapses
// to 0. Best total is 5 at [{0,1},{2}], but [{0,2},{1}] at 4 is also
// merge-and-split proof, so no start-independent outcome exists.
TUGame toy_cost_game() { return TUGame(3, {0, 1, 1, 4, 1, 3, 3, 0}); }

const ComparisonOrder kUtil{OrderKind::kUtilitarian, PayoffRule::kEqualSplit};
const ComparisonOrder kParetoEq{OrderKind::kPareto, PayoffRule::kEqualSplit};

}  // namespace

TEST_CASE("partition counts", "[formation]") {
  CHECK(count_partitions(1) == 1);
  CHECK(count_partitions(3) == 5);
  CHECK(count_partitions(4) == 15);
  CHECK(count_partitions(10) == 115975);
  CHECK(count_partitions(15) == 1382958545ull);
  CHECK_THROWS_AS(count_partitions(0), std::invalid_argument);
  CHECK_THROWS_AS(count_partitions(16), std::invalid_argument);
}

TEST_CASE("partition enumeration", "[formation]") {
  SECTION("n=1") {
    PartitionEnumerator en(1);
    REQUIRE(en.has_next());
    CHECK(en.next() == Partition::grand(1));
    CHECK_FALSE(en.has_next());
  }
  SECTION("n=3 yields the five partitions, grand first") {
    PartitionEnumerator en(3);
    std::vector<Partition> all;
    while (en.has_next()) all.push_back(en.next());
    REQUIRE(all.size() == 5);
    CHECK(all.front() == Partition::grand(3));
    CHECK(all.back() == Partition::singletons(3));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        CHECK_FALSE(all[i] == all[j]);
  }
  SECTION("counts match the recurrence") {
    for (int n = 1; n <= 8; ++n) {
      PartitionEnumerator en(n);
      std::uint64_t c = 0;
      while (en.has_next()) {
        en.next();
        ++c;
      }
      CHECK(c == count_partitions(n));
    }
  }
}

TEST_CASE("preference orders", "[formation]") {
  const TUGame maj(3, {0, 0, 0, 2.0 / 3, 0, 2.0 / 3, 2.0 / 3, 1.0});
  SECTION("utilitarian compares welfare sums") {
    CHECK(prefers(kUtil, maj, {full_coalition(3)},
                  {Coalition::of({0}), Coalition::of({1}), Coalition::of({2})}));
    CHECK_FALSE(prefers(kUtil, maj, {full_coalition(3)}, {full_coalition(3)}));
  }
  SECTION("strictness rules out ties under both orders") {
    const std::vector<Coalition> same{Coalition::of({0, 1}), Coalition::of({2})};
    CHECK_FALSE(prefers(kUtil, maj, same, same));
    CHECK_FALSE(prefers(kParetoEq, maj, same, same));
  }
  SECTION("pareto equal-split on the toy cost game") {
    // Players 0 and 1 move from 1 to 2 each; player 2 stays at 1.
    CHECK(prefers(kParetoEq, toy_cost_game(),
                  {Coalition::of({0, 1}), Coalition::of({2})},
                  {Coalition::of({0}), Coalition::of({1}), Coalition::of({2})}));
    // The reverse hurts players 0 and 1.
    CHECK_FALSE(prefers(kParetoEq, toy_cost_game(),
                        {Coalition::of({0}), Coalition::of({1}), Coalition::of({2})},
                        {Coalition::of({0, 1}), Coalition::of({2})}));
  }
  SECTION("mismatched player sets are rejected") {
    CHECK_THROWS_AS(prefers(kUtil, maj, {Coalition::of({0})},
                            {Coalition::of({0, 1})}),
                    std::invalid_argument);
  }
}

TEST_CASE("merge-split on the toy cost game", "[formation]") {
  const TUGame g = toy_cost_game();
  const FormationTrace trace =
      run_merge_split(g, kUtil, Partition::singletons(3));
  CHECK(trace.final_partition ==
        Partition({Coalition::of({0, 1}), Coalition::of({2})}, 3));
  CHECK(social_welfare(g, trace.final_partition) == Catch::Approx(5.0));
  REQUIRE(trace.steps.size() == 1);
  CHECK(trace.steps[0].kind == FormationStep::Kind::kMerge);

  // Exhaustive search confirms 5 is the best any partition can do.
  PartitionEnumerator en(3);
  double best = -1e300;
  while (en.has_next()) best = std::max(best, social_welfare(g, en.next()));
  CHECK(best == Catch::Approx(5.0));
}

TEST_CASE("merge-split reaches the grand coalition when merging always pays",
          "[formation]") {
  std::mt19937_64 rng(42);
  const TUGame g = cgt_test::random_strictly_superadditive_game(rng, 5);
  for (const Partition& start :
       {Partition::singletons(5), Partition::grand(5),
        Partition({Coalition::of({0, 2}), Coalition::of({1, 3}),
                   Coalition::of({4})},
                  5)}) {
    const FormationTrace trace = run_merge_split(g, kUtil, start);
    CHECK(trace.final_partition == Partition::grand(5));
  }
}

TEST_CASE("merge scan order is deterministic", "[formation]") {
  // Two merges improve equally from singletons; the pair with the lowest
  // (mask, mask) goes first.
  const TUGame g(3, {0, 0, 0, 1, 0, 1, 0, 1});
  const FormationTrace trace =
      run_merge_split(g, kUtil, Partition::singletons(3));
  REQUIRE_FALSE(trace.steps.empty());
  CHECK(trace.steps[0].kind == FormationStep::Kind::kMerge);
  CHECK(trace.steps[0].before ==
        std::vector<Coalition>{Coalition::of({0}), Coalition::of({1})});
  CHECK(trace.final_partition ==
        Partition({Coalition::of({0, 1}), Coalition::of({2})}, 3));
}

TEST_CASE("flat games never move", "[formation]") {
  const TUGame zero(3, std::vector<double>(8, 0.0));
  for (const ComparisonOrder& order : {kUtil, kParetoEq}) {
    const Partition start({Coalition::of({0, 1}), Coalition::of({2})}, 3);
    const FormationTrace trace = run_merge_split(zero, order, start);
    CHECK(trace.steps.empty());
    CHECK(trace.final_partition == start);
    CHECK(dhp_stable(zero, start, order));
  }
}

TEST_CASE("merge-and-split proofness", "[formation]") {
  const TUGame g = toy_cost_game();
  CHECK(dhp_stable(g, Partition({Coalition::of({0, 1}), Coalition::of({2})}, 3),
                   kUtil));
  CHECK_FALSE(dhp_stable(g, Partition::grand(3), kUtil));  // splitting pays
  std::mt19937_64 rng(77);
  const TUGame strict = cgt_test::random_strictly_superadditive_game(rng, 4);
  CHECK_FALSE(dhp_stable(strict, Partition::singletons(4), kUtil));
}

TEST_CASE("start-independent outcomes", "[formation]") {
  SECTION("strictly superadditive games settle on the grand coalition") {
    std::mt19937_64 rng(4242);
    const TUGame g = cgt_test::random_strictly_superadditive_game(rng, 4);
    const std::optional<Partition> dc = dc_candidate(g, kUtil);
    REQUIRE(dc.has_value());
    CHECK(*dc == Partition::grand(4));
  }
  SECTION("the toy cost game has two competing fixed points") {
    CHECK_FALSE(dc_candidate(toy_cost_game(), kUtil).has_value());
  }
  SECTION("flat games keep every start fixed") {
    const TUGame zero(2, {0, 0, 0, 0});
    CHECK_FALSE(dc_candidate(zero, kUtil).has_value());
  }
}

TEST_CASE("social welfare sums block values", "[formation]") {
  const TUGame maj(3, {0, 0, 0, 2.0 / 3, 0, 2.0 / 3, 2.0 / 3, 1.0});
  CHECK(social_welfare(maj, Partition::grand(3)) == Catch::Approx(1.0));
  CHECK(social_welfare(maj, Partition::singletons(3)) == Catch::Approx(0.0));
  CHECK(social_welfare(toy_cost_game(),
                       Partition({Coalition::of({0, 1}), Coalition::of({2})}, 3)) ==
        Catch::Approx(5.0));
}

TEST_CASE("merge-split soundness on random games", "[formation][property]") {
  std::mt19937_64 rng(987);
  std::uniform_int_distribution<int> size(2, 6);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = size(rng);
    const TUGame g = cgt_test::random_game(rng, n);
    const Partition start = cgt_test::random_partition(rng, n);
    const FormationTrace trace = run_merge_split(g, kUtil, start);

    // The fixed point really is merge-and-split proof.
    CHECK(dhp_stable(g, trace.final_partition, kUtil));

    // Welfare strictly increases along the trace.
    double welfare = social_welfare(g, start);
    std::vector<Coalition> blocks = start.blocks();
    for (const FormationStep& step : trace.steps) {
      for (Coalition c : step.before)
        blocks.erase(std::remove(blocks.begin(), blocks.end(), c), blocks.end());
      for (Coalition c : step.after) blocks.push_back(c);
      const double next = social_welfare(g, Partition(blocks, n));
      CHECK(next > welfare);
      welfare = next;
    }
  }
}

TEST_CASE("pareto merge-split terminates and is stable",
          "[formation][property]") {
  std::mt19937_64 rng(24680);
  for (int trial = 0; trial < 10; ++trial) {
    const TUGame g = cgt_test::random_game(rng, 5);
    const FormationTrace trace =
        run_merge_split(g, kParetoEq, Partition::singletons(5));
    CHECK(dhp_stable(g, trace.final_partition, kParetoEq));
  }
}

TEST_CASE("division rules distribute exactly the block value", "[formation]") {
  std::mt19937_64 rng(8642);
  const TUGame g = cgt_test::superadditive_cover(cgt_test::random_game(rng, 5));
  const Coalition block = Coalition::of({0, 2, 4});
  for (PayoffRule rule : {PayoffRule::kEqualSplit, PayoffRule::kShapleyPerBlock,
                          PayoffRule::kNucleolusPerBlock}) {
    Allocation x(5, 0.0);
    scatter_block_payoffs(g, block, rule, x);
    double total = 0.0;
    for (int i : block.members()) total += x[static_cast<std::size_t>(i)];
    CHECK(total == Catch::Approx(g.value(block)).margin(1e-9));
    CHECK(x[1] == 0.0);  // non-members untouched
  }
}

TEST_CASE("pareto order with per-block solution rules",
          "[formation][property]") {
  std::mt19937_64 rng(13579);
  for (PayoffRule rule :
       {PayoffRule::kShapleyPerBlock, PayoffRule::kNucleolusPerBlock}) {
    const ComparisonOrder order{OrderKind::kPareto, rule};
    for (int trial = 0; trial < 5; ++trial) {
      // Superadditive tables keep every block's imputation set nonempty.
      const TUGame g =
          cgt_test::superadditive_cover(cgt_test::random_game(rng, 4));
      const FormationTrace trace =
          run_merge_split(g, order, Partition::singletons(4));
      CHECK(dhp_stable(g, trace.final_partition, order));
    }
  }
}

TEST_CASE("start-independent outcome maximizes welfare when it exists",
          "[formation][property]") {
  std::mt19937_64 rng(1357);
  for (int trial = 0; trial < 8; ++trial) {
    const TUGame g = cgt_test::random_strictly_superadditive_game(rng, 5);
    const std::optional<Partition> dc = dc_candidate(g, kUtil);
    REQUIRE(dc.has_value());
    const double dc_welfare = social_welfare(g, *dc);
    PartitionEnumerator en(5);
    while (en.has_next())
      CHECK(dc_welfare >= social_welfare(g, en.next()) - 1e-9);
  }
}
