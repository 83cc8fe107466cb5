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

#ifndef CGT_FORMATION_HPP
#define CGT_FORMATION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cgt/coalition_structure.hpp"
#include "cgt/game.hpp"
#include "cgt/solutions.hpp"

namespace cgt {

/// Number of partitions of an n-element set (the Bell number), by the Bell
/// triangle recurrence.
inline std::uint64_t count_partitions(int n) {
  if (n < 1 || n > 15)
    throw std::invalid_argument("count_partitions: n out of range [1, 15]");
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i < n; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.back();
}

/// Streams every partition of {0, ..., n-1} exactly once, in lexicographic
/// restricted-growth-string order. The grand coalition comes first and the
/// all-singletons partition last.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int n) : n_(n) {
    if (n < 1 || n > 12)
      throw std::invalid_argument("PartitionEnumerator: n out of range [1, 12]");
    rgs_.assign(static_cast<std::size_t>(n), 0);
    done_ = false;
  }

  bool has_next() const { return !done_; }

  Partition next() {
    if (done_) throw std::logic_error("PartitionEnumerator: exhausted");
    Partition out = to_partition();
    advance();
    return out;
  }

 private:
  Partition to_partition() const {
    std::vector<Coalition> blocks;
    for (int i = 0; i < n_; ++i) {
      const std::size_t b = static_cast<std::size_t>(rgs_[static_cast<std::size_t>(i)]);
      if (b == blocks.size()) blocks.emplace_back();
      blocks[b] = blocks[b].with(i);
    }
    return Partition(std::move(blocks), n_);
  }

  void advance() {
    // Next restricted growth string: rightmost position that can still grow.
    std::vector<int> prefix_max(static_cast<std::size_t>(n_), 0);
    for (int k = 1; k < n_; ++k)
      prefix_max[static_cast<std::size_t>(k)] =
          std::max(prefix_max[static_cast<std::size_t>(k - 1)],
                   rgs_[static_cast<std::size_t>(k - 1)]);
    for (int i = n_ - 1; i > 0; --i) {
      if (rgs_[static_cast<std::size_t>(i)] <= prefix_max[static_cast<std::size_t>(i)]) {
        ++rgs_[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n_; ++k) rgs_[static_cast<std::size_t>(k)] = 0;
        return;
      }
    }
    done_ = true;
  }

  int n_;
  std::vector<int> rgs_;
  bool done_ = true;
};

/// How one collection of coalitions is compared against another.
enum class OrderKind { kUtilitarian, kPareto };

/// How a forming coalition's worth is divided among its members when payoffs
/// drive the comparison (Pareto order).
enum class PayoffRule {
  kEqualSplit,        // v(S)/|S| each
  kShapleyPerBlock,   // Shapley value of the restricted game
  kNucleolusPerBlock, // nucleolus of the restricted game
  kIdentity,          // every member receives v(S) itself (singleton NTU games)
};

struct ComparisonOrder {
  OrderKind kind = OrderKind::kUtilitarian;
  PayoffRule payoff_rule = PayoffRule::kEqualSplit;
};

/// Per-member payoffs a block hands out under a division rule, written into
/// the global allocation slots of the block's members.
inline void scatter_block_payoffs(const TUGame& game, Coalition block,
                                  PayoffRule rule, Allocation& out) {
  const std::vector<int> members = block.members();
  switch (rule) {
    case PayoffRule::kEqualSplit: {
      const double share = game.value(block) / static_cast<double>(members.size());
      for (int i : members) out[static_cast<std::size_t>(i)] = share;
      return;
    }
    case PayoffRule::kIdentity: {
      for (int i : members) out[static_cast<std::size_t>(i)] = game.value(block);
      return;
    }
    case PayoffRule::kShapleyPerBlock: {
      const RestrictedGame sub = restrict_game(game, block);
      const Allocation phi = shapley_exact(sub.game);
      for (std::size_t k = 0; k < sub.members.size(); ++k)
        out[static_cast<std::size_t>(sub.members[k])] = phi[k];
      return;
    }
    case PayoffRule::kNucleolusPerBlock: {
      const RestrictedGame sub = restrict_game(game, block);
      const Allocation nu = nucleolus(sub.game);
      for (std::size_t k = 0; k < sub.members.size(); ++k)
        out[static_cast<std::size_t>(sub.members[k])] = nu[k];
      return;
    }
  }
  throw std::logic_error("scatter_block_payoffs: unknown rule");
}

namespace detail {

inline PlayerMask union_of(const std::vector<Coalition>& blocks) {
  PlayerMask m = 0;
  for (Coalition b : blocks) {
    if ((m & b.mask) != 0)
      throw std::invalid_argument("collection has overlapping coalitions");
    m |= b.mask;
  }
  return m;
}

inline Allocation collection_payoffs(const TUGame& game,
                                     const std::vector<Coalition>& blocks,
                                     PayoffRule rule) {
  Allocation x(static_cast<std::size_t>(game.num_players()), 0.0);
  for (Coalition b : blocks) scatter_block_payoffs(game, b, rule, x);
  return x;
}

}  // namespace detail

/// Strict preference of collection r over collection s. Both must cover the
/// same players. Utilitarian: strictly larger total worth. Pareto: the payoff
/// vector weakly improves for everyone and strictly for someone.
inline bool prefers(const ComparisonOrder& order, const TUGame& game,
                    const std::vector<Coalition>& r,
                    const std::vector<Coalition>& s) {
  if (detail::union_of(r) != detail::union_of(s))
    throw std::invalid_argument("prefers: collections cover different players");

  if (order.kind == OrderKind::kUtilitarian) {
    double vr = 0.0, vs = 0.0;
    for (Coalition b : r) vr += game.value(b);
    for (Coalition b : s) vs += game.value(b);
    return strictly_greater(vr, vs);
  }

  const Allocation xr = detail::collection_payoffs(game, r, order.payoff_rule);
  const Allocation xs = detail::collection_payoffs(game, s, order.payoff_rule);
  bool one_strict = false;
  for (Coalition b : r) {
    for (int i : b.members()) {
      const double a = xr[static_cast<std::size_t>(i)];
      const double o = xs[static_cast<std::size_t>(i)];
      if (strictly_greater(o, a)) return false;  // someone got hurt
      if (strictly_greater(a, o)) one_strict = true;
    }
  }
  return one_strict;
}

struct FormationStep {
  enum class Kind { kMerge, kSplit };
  Kind kind;
  std::vector<Coalition> before;
  std::vector<Coalition> after;
};

struct FormationTrace {
  std::vector<FormationStep> steps;
  Partition final_partition;
};

namespace detail {

/// Sub-partitions of one block (at least two parts), streamed in the same
/// restricted-growth order as PartitionEnumerator but mapped onto the block's
/// members.
inline bool first_preferred_split(const TUGame& game,
                                  const ComparisonOrder& order, Coalition block,
                                  std::vector<Coalition>& out) {
  const std::vector<int> members = block.members();
  const int k = static_cast<int>(members.size());
  if (k < 2) return false;
  PartitionEnumerator inner(k);
  bool first = true;
  while (inner.has_next()) {
    const Partition local = inner.next();
    if (first) {  // the trivial {block} partition
      first = false;
      continue;
    }
    std::vector<Coalition> candidate;
    candidate.reserve(local.num_blocks());
    for (Coalition lb : local.blocks()) {
      Coalition global;
      for (int b : lb.members())
        global = global.with(members[static_cast<std::size_t>(b)]);
      candidate.push_back(global);
    }
    if (prefers(order, game, candidate, {block})) {
      out = std::move(candidate);
      return true;
    }
  }
  return false;
}

inline std::vector<Coalition> sorted_by_mask(std::vector<Coalition> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](Coalition a, Coalition b) { return a.mask < b.mask; });
  return blocks;
}

}  // namespace detail

/// Merge-and-split dynamics from a starting partition. The merge phase scans
/// block pairs in ascending (mask, mask) order and applies the first merge
/// the order strictly prefers; the split phase scans blocks in ascending mask
/// order and applies the first strictly preferred split. The loop alternates
/// until neither rule applies. Every accepted step is a strict improvement,
/// so the iteration terminates on the finite partition lattice.
inline FormationTrace run_merge_split(const TUGame& game,
                                      const ComparisonOrder& order,
                                      const Partition& initial) {
  const int n = game.num_players();
  if (n > 12)
    throw std::invalid_argument("run_merge_split: more than 12 players");
  if (initial.num_players() != n)
    throw std::invalid_argument("run_merge_split: partition size mismatch");

  std::vector<Coalition> blocks = initial.blocks();
  FormationTrace trace{{}, initial};

  // Bell(n) * 2^n bounds the number of strict improvements.
  const std::uint64_t step_cap = count_partitions(n) << n;

  bool changed = true;
  while (changed) {
    changed = false;

    // Merge phase: run to exhaustion.
    bool merged = true;
    while (merged) {
      merged = false;
      const std::vector<Coalition> scan = detail::sorted_by_mask(blocks);
      for (std::size_t a = 0; a < scan.size() && !merged; ++a) {
        for (std::size_t b = a + 1; b < scan.size() && !merged; ++b) {
          const Coalition merged_block = scan[a].united(scan[b]);
          if (!prefers(order, game, {merged_block}, {scan[a], scan[b]}))
            continue;
          blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                      [&](Coalition c) {
                                        return c == scan[a] || c == scan[b];
                                      }),
                       blocks.end());
          blocks.push_back(merged_block);
          trace.steps.push_back({FormationStep::Kind::kMerge,
                                 {scan[a], scan[b]},
                                 {merged_block}});
          merged = true;
          changed = true;
        }
      }
      if (trace.steps.size() > step_cap)
        throw std::logic_error("run_merge_split: step bound exceeded");
    }

    // Split phase: first preferred split, then back to merging.
    const std::vector<Coalition> scan = detail::sorted_by_mask(blocks);
    for (Coalition block : scan) {
      std::vector<Coalition> parts;
      if (!detail::first_preferred_split(game, order, block, parts)) continue;
      blocks.erase(std::remove(blocks.begin(), blocks.end(), block),
                   blocks.end());
      for (Coalition p : parts) blocks.push_back(p);
      trace.steps.push_back({FormationStep::Kind::kSplit, {block}, parts});
      changed = true;
      break;
    }
    if (trace.steps.size() > step_cap)
      throw std::logic_error("run_merge_split: step bound exceeded");
  }

  trace.final_partition = Partition(blocks, n);
  return trace;
}

/// Merge-and-split proofness: no pair of blocks wants to merge and no block
/// wants to split under the given order.
inline bool dhp_stable(const TUGame& game, const Partition& partition,
                       const ComparisonOrder& order) {
  if (game.num_players() > 12)
    throw std::invalid_argument("dhp_stable: more than 12 players");
  const std::vector<Coalition> scan =
      detail::sorted_by_mask(partition.blocks());
  for (std::size_t a = 0; a < scan.size(); ++a)
    for (std::size_t b = a + 1; b < scan.size(); ++b)
      if (prefers(order, game, {scan[a].united(scan[b])}, {scan[a], scan[b]}))
        return false;
  std::vector<Coalition> parts;
  for (Coalition block : scan)
    if (detail::first_preferred_split(game, order, block, parts)) return false;
  return true;
}

/// Candidate uniquely-reached partition: runs merge-and-split from every
/// possible starting partition and reports the common fixed point if all runs
/// agree, or nothing when the outcome depends on the start (no such partition
/// is certified — existence is not guaranteed).
inline std::optional<Partition> dc_candidate(const TUGame& game,
                                             const ComparisonOrder& order) {
  const int n = game.num_players();
  if (n > 8)
    throw std::invalid_argument("dc_candidate: more than 8 players");
  std::optional<Partition> common;
  PartitionEnumerator starts(n);
  while (starts.has_next()) {
    const FormationTrace trace = run_merge_split(game, order, starts.next());
    if (!common) {
      common = trace.final_partition;
    } else if (!(*common == trace.final_partition)) {
      return std::nullopt;
    }
  }
  return common;
}

/// Total worth of a partition: the sum of its blocks' values.
inline double social_welfare(const TUGame& game, const Partition& partition) {
  double total = 0.0;
  for (Coalition b : partition.blocks()) total += game.value(b);
  return total;
}

}  // namespace cgt

#endif  // CGT_FORMATION_HPP
