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

#ifndef CGT_SOLUTIONS_HPP
#define CGT_SOLUTIONS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cgt/game.hpp"
#include "cgt/lp.hpp"

namespace cgt {

/// Outcome of a structural property check. When the property fails, the
/// witness names the first violating coalition pair in ascending
/// (S1 mask, S2 mask) order, so failures are reproducible.
struct PropertyReport {
  bool holds = true;
  std::optional<std::pair<Coalition, Coalition>> witness;
};

/// v(S1 u S2) >= v(S1) + v(S2) for all disjoint nonempty S1, S2.
inline PropertyReport check_superadditive(const TUGame& game,
                                          double tol = kTol) {
  const PlayerMask full = game.full_mask();
  for (PlayerMask s1 = 1; s1 <= full; ++s1) {
    const PlayerMask rest = full & ~s1;
    // Submasks of the complement in increasing numeric order, so the witness
    // is the first violating pair.
    for (PlayerMask s2 = (0 - rest) & rest; s2 != 0; s2 = (s2 - rest) & rest) {
      const double merged = game.value(s1 | s2);
      const double apart = game.value(s1) + game.value(s2);
      if (!nearly_geq(merged, apart, tol))
        return {false, std::make_pair(Coalition{s1}, Coalition{s2})};
    }
  }
  return {true, std::nullopt};
}

/// v(S1) + v(S2) <= v(S1 u S2) + v(S1 n S2) for all S1, S2 (supermodularity).
inline PropertyReport check_convex(const TUGame& game, double tol = kTol) {
  const PlayerMask full = game.full_mask();
  for (PlayerMask s1 = 0; s1 <= full; ++s1) {
    for (PlayerMask s2 = 0; s2 <= full; ++s2) {
      const double lhs = game.value(s1) + game.value(s2);
      const double rhs = game.value(s1 | s2) + game.value(s1 & s2);
      if (!nearly_geq(rhs, lhs, tol))
        return {false, std::make_pair(Coalition{s1}, Coalition{s2})};
    }
  }
  return {true, std::nullopt};
}

/// True iff x is efficient and no coalition can improve on it:
/// sum_i x_i = v(N) and x(S) >= v(S) - tol for every S.
inline bool core_membership(const TUGame& game, const Allocation& x,
                            double tol = kTol) {
  const std::vector<double> sums = coalition_sums(game, x);
  if (std::abs(sums[game.full_mask()] - game.grand_value()) >
      tol * std::max(1.0, std::abs(game.grand_value())))
    return false;
  for (PlayerMask s = 1; s <= game.full_mask(); ++s)
    if (sums[s] < game.value(s) - tol) return false;
  return true;
}

struct CoreResult {
  bool nonempty = false;
  std::optional<Allocation> sample_point;
  double lp_objective = 0.0;
  int lp_iterations = 0;
};

/// Decides core emptiness by minimizing sum_i x_i subject to
/// x(S) >= v(S) for every nonempty S. The core is nonempty exactly when the
/// optimum does not exceed v(N); the minimizing vertex, nudged back onto the
/// efficiency plane, is then a core member.
inline CoreResult core_nonempty(const TUGame& game) {
  const int n = game.num_players();
  const PlayerMask full = game.full_mask();

  LinearProgram lp;
  lp.objective.assign(static_cast<std::size_t>(n), 1.0);
  lp.geq_rows.reserve(full);
  for (PlayerMask s = 1; s <= full; ++s) {
    LinearProgram::Row row;
    row.coeffs.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      if ((s >> i) & 1u) row.coeffs[static_cast<std::size_t>(i)] = 1.0;
    row.bound = game.value(s);
    lp.geq_rows.push_back(std::move(row));
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal)
    throw std::logic_error("core LP must have an optimum");

  CoreResult out;
  out.lp_objective = sol.objective_value;
  out.lp_iterations = sol.iterations;
  out.nonempty = sol.objective_value <= game.grand_value() + kLpFeasTol;
  if (out.nonempty) {
    Allocation x = sol.x;
    double total = 0.0;
    for (double xi : x) total += xi;
    const double shift = (game.grand_value() - total) / n;
    for (double& xi : x) xi += shift;
    out.sample_point = std::move(x);
  }
  return out;
}

/// Nonnegative weights over coalitions with sum_{S: i in S} mu(S) = 1 for
/// every player. Only nonzero weights are stored.
struct BalancedWeights {
  std::map<Coalition, double> weights;
};

struct BalancednessResult {
  bool balanced = false;
  /// The weight collection violating the balancedness bound, present iff the
  /// game is not balanced.
  std::optional<BalancedWeights> violating_weights;
  double lp_value = 0.0;
  int lp_iterations = 0;
};

/// Decides balancedness through the dual of the core LP: maximize
/// sum_S mu(S) v(S) over balanced weight collections. The game is balanced
/// iff the maximum stays within v(N); otherwise the maximizing collection is
/// returned as a certificate.
inline BalancednessResult check_balanced(const TUGame& game) {
  const int n = game.num_players();
  const PlayerMask full = game.full_mask();
  const std::size_t num_vars = full;  // one weight per nonempty coalition

  LinearProgram lp;
  lp.objective.assign(num_vars, 0.0);
  for (PlayerMask s = 1; s <= full; ++s)
    lp.objective[s - 1] = -game.value(s);  // maximize => minimize negation
  lp.nonnegative.assign(num_vars, true);
  for (int i = 0; i < n; ++i) {
    LinearProgram::Row row;
    row.coeffs.assign(num_vars, 0.0);
    for (PlayerMask s = 1; s <= full; ++s)
      if ((s >> i) & 1u) row.coeffs[s - 1] = 1.0;
    row.bound = 1.0;
    lp.eq_rows.push_back(std::move(row));
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal)
    throw std::logic_error("balancedness LP must have an optimum");

  BalancednessResult out;
  out.lp_value = -sol.objective_value;
  out.lp_iterations = sol.iterations;
  out.balanced = out.lp_value <= game.grand_value() + kLpFeasTol;
  if (!out.balanced) {
    BalancedWeights cert;
    for (PlayerMask s = 1; s <= full; ++s) {
      const double w = sol.x[s - 1];
      if (w > 1e-12) cert.weights[Coalition{s}] = std::min(w, 1.0);
    }
    out.violating_weights = std::move(cert);
  }
  return out;
}

/// True iff every value is 0 or 1 (within tolerance) and v(N) = 1.
inline bool is_simple_game(const TUGame& game, double tol = kTol) {
  for (double v : game.values())
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
  return std::abs(game.grand_value() - 1.0) <= tol;
}

/// Players whose removal zeroes the grand coalition's worth. Only defined for
/// simple games.
inline std::vector<int> veto_players(const TUGame& game) {
  if (!is_simple_game(game))
    throw std::invalid_argument("veto_players: not a simple game");
  std::vector<int> out;
  for (int i = 0; i < game.num_players(); ++i)
    if (std::abs(game.value(game.full_mask() & ~(PlayerMask{1} << i))) <= kTol)
      out.push_back(i);
  return out;
}

/// Core of a simple game. With at least one veto player the core has the
/// closed form {x >= 0, x_i = 0 for every non-veto i, sum x_i = 1}; the
/// sample point hands v(N) to the lowest-indexed veto player. Veto-free
/// games fall back to the LP decision.
struct SimpleGameCore {
  CoreResult core;
  Coalition veto;     // the veto players
  bool closed_form = false;  // true when the veto characterization applies
};

inline SimpleGameCore simple_game_core(const TUGame& game) {
  SimpleGameCore out;
  for (int i : veto_players(game)) out.veto = out.veto.with(i);
  if (!out.veto.empty()) {
    out.closed_form = true;
    out.core.nonempty = true;
    Allocation x(static_cast<std::size_t>(game.num_players()), 0.0);
    x[static_cast<std::size_t>(out.veto.lowest())] = game.grand_value();
    out.core.sample_point = std::move(x);
  } else {
    out.core = core_nonempty(game);
  }
  return out;
}

namespace detail {

/// Random-order weights |S|!(n-|S|-1)!/n! computed as 1/(n * C(n-1, |S|)).
inline std::vector<double> shapley_weights(int n) {
  std::vector<double> binom(static_cast<std::size_t>(n), 1.0);
  for (int s = 1; s < n; ++s)
    binom[static_cast<std::size_t>(s)] =
        binom[static_cast<std::size_t>(s - 1)] * (n - s) / s;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    w[static_cast<std::size_t>(s)] = 1.0 / (n * binom[static_cast<std::size_t>(s)]);
  return w;
}

}  // namespace detail

/// Exact Shapley value: the expected marginal contribution of each player
/// over uniformly random joining orders, evaluated by direct summation over
/// the 2^n coalition table.
inline Allocation shapley_exact(const TUGame& game) {
  const int n = game.num_players();
  const PlayerMask full = game.full_mask();
  const std::vector<double> w = detail::shapley_weights(n);
  Allocation phi(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const PlayerMask bit = PlayerMask{1} << i;
    double sum = 0.0;
    for (PlayerMask s = 0; s <= full; ++s) {
      if (s & bit) continue;
      sum += w[static_cast<std::size_t>(std::popcount(s))] *
             (game.value(s | bit) - game.value(s));
    }
    phi[static_cast<std::size_t>(i)] = sum;
  }
  return phi;
}

/// Monte Carlo Shapley estimate: average marginal contributions over
/// `num_samples` random joining orders. Fully deterministic for a fixed
/// (game, num_samples, seed) triple.
inline Allocation shapley_sampled(const TUGame& game, long num_samples,
                                  std::uint64_t seed) {
  if (num_samples < 1)
    throw std::invalid_argument("shapley_sampled: need at least one sample");
  const int n = game.num_players();
  std::mt19937_64 rng(seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

  Allocation phi(static_cast<std::size_t>(n), 0.0);
  for (long k = 0; k < num_samples; ++k) {
    // Fisher-Yates with explicit draws, to keep the stream reproducible.
    for (int i = n - 1; i > 0; --i) {
      std::uniform_int_distribution<int> pick(0, i);
      std::swap(order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(pick(rng))]);
    }
    PlayerMask joined = 0;
    double prev = 0.0;
    for (int i : order) {
      joined |= PlayerMask{1} << i;
      const double now = game.value(joined);
      phi[static_cast<std::size_t>(i)] += now - prev;
      prev = now;
    }
  }
  for (double& p : phi) p /= static_cast<double>(num_samples);
  return phi;
}

/// One coalition's dissatisfaction with an allocation.
struct ExcessEntry {
  Coalition coalition;
  double excess = 0.0;  // v(S) - x(S)
};

/// Excesses of every proper nonempty coalition, sorted non-increasing with
/// ties broken by ascending mask. Exactly 2^n - 2 entries.
inline std::vector<ExcessEntry> excess_vector(const TUGame& game,
                                              const Allocation& x) {
  const std::vector<double> sums = coalition_sums(game, x);
  std::vector<ExcessEntry> out;
  out.reserve((std::size_t{1} << game.num_players()) - 2);
  for (PlayerMask s = 1; s < game.full_mask(); ++s)
    out.push_back({Coalition{s}, game.value(s) - sums[s]});
  std::stable_sort(out.begin(), out.end(),
                   [](const ExcessEntry& a, const ExcessEntry& b) {
                     if (a.excess != b.excess) return a.excess > b.excess;
                     return a.coalition.mask < b.coalition.mask;
                   });
  return out;
}

namespace detail {

/// Rank of the 0/1 incidence matrix formed by the given coalition masks.
inline int mask_system_rank(std::vector<PlayerMask> masks, int n) {
  std::vector<std::vector<double>> m;
  m.reserve(masks.size());
  for (PlayerMask s : masks) {
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      if ((s >> i) & 1u) row[static_cast<std::size_t>(i)] = 1.0;
    m.push_back(std::move(row));
  }
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
    int pivot = -1;
    double best = 1e-9;
    for (int r = rank; r < static_cast<int>(m.size()); ++r) {
      const double a = std::abs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
      if (a > best) {
        best = a;
        pivot = r;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(pivot)]);
    const auto& prow = m[static_cast<std::size_t>(rank)];
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank) continue;
      auto& row = m[static_cast<std::size_t>(r)];
      const double f = row[static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int c2 = 0; c2 < n; ++c2)
        row[static_cast<std::size_t>(c2)] -= f * prow[static_cast<std::size_t>(c2)];
    }
    ++rank;
  }
  return rank;
}

struct FrozenExcess {
  PlayerMask mask;
  double payoff_sum;  // x(S) pinned to v(S) - excess level of its stage
};

/// Stage LP of the sequential excess minimization: variables (x, eps),
/// minimize eps subject to efficiency, individual rationality, the frozen
/// equalities, and x(S) + eps >= v(S) for the still-active coalitions. With
/// fix_eps set, eps becomes the constant eps_value and the objective is
/// instead to maximize x(target) — used to test whether a coalition's excess
/// is pinned over the whole optimal face.
inline LpSolution nucleolus_stage_lp(const TUGame& game,
                                     const std::vector<FrozenExcess>& frozen,
                                     const std::vector<PlayerMask>& active,
                                     bool fix_eps, double eps_value,
                                     PlayerMask target) {
  const int n = game.num_players();
  const std::size_t nv = static_cast<std::size_t>(n) + (fix_eps ? 0 : 1);

  LinearProgram lp;
  lp.objective.assign(nv, 0.0);
  if (fix_eps) {
    for (int i = 0; i < n; ++i)
      if ((target >> i) & 1u)
        lp.objective[static_cast<std::size_t>(i)] = -1.0;  // maximize x(target)
  } else {
    lp.objective[static_cast<std::size_t>(n)] = 1.0;  // minimize eps
  }

  auto coalition_row = [&](PlayerMask s, double eps_coeff, double bound) {
    LinearProgram::Row row;
    row.coeffs.assign(nv, 0.0);
    for (int i = 0; i < n; ++i)
      if ((s >> i) & 1u) row.coeffs[static_cast<std::size_t>(i)] = 1.0;
    if (!fix_eps) row.coeffs[static_cast<std::size_t>(n)] = eps_coeff;
    row.bound = bound;
    return row;
  };

  lp.eq_rows.push_back(coalition_row(game.full_mask(), 0.0, game.grand_value()));
  for (const FrozenExcess& f : frozen)
    lp.eq_rows.push_back(coalition_row(f.mask, 0.0, f.payoff_sum));
  for (int i = 0; i < n; ++i)
    lp.geq_rows.push_back(
        coalition_row(PlayerMask{1} << i, 0.0, game.singleton_value(i)));
  for (PlayerMask s : active) {
    const double bound = fix_eps ? game.value(s) - eps_value : game.value(s);
    lp.geq_rows.push_back(coalition_row(s, 1.0, bound));
  }
  return solve_lp(lp);
}

}  // namespace detail

/// The nucleolus: the unique imputation that lexicographically minimizes the
/// non-increasing vector of coalition excesses. Computed by the standard
/// sequence of LPs: minimize the worst excess, pin the coalitions whose
/// excess cannot move on the optimal face, and repeat on the rest until the
/// pinned equalities determine the allocation.
///
/// Tight rows at the returned vertex are only *candidates* for pinning; each
/// one is confirmed by maximizing its payoff sum over the optimal face, since
/// a degenerate vertex can touch constraints that other optima leave slack.
inline Allocation nucleolus(const TUGame& game) {
  const int n = game.num_players();
  if (n > 12)
    throw std::invalid_argument(
        "nucleolus: stage programs need up to 2^n rows, n must be <= 12");
  double singleton_total = 0.0;
  for (int i = 0; i < n; ++i) singleton_total += game.singleton_value(i);
  if (singleton_total > game.grand_value() +
                            kTol * std::max(1.0, std::abs(game.grand_value())))
    throw std::invalid_argument("nucleolus: empty imputation set");
  if (n == 1) return {game.grand_value()};

  std::vector<detail::FrozenExcess> frozen;
  std::vector<PlayerMask> active;
  for (PlayerMask s = 1; s < game.full_mask(); ++s) active.push_back(s);

  Allocation x(static_cast<std::size_t>(n), 0.0);
  while (!active.empty()) {
    const LpSolution stage =
        detail::nucleolus_stage_lp(game, frozen, active, false, 0.0, 0);
    if (stage.status != LpStatus::kOptimal)
      throw std::logic_error("nucleolus: stage LP must be solvable");
    const double eps = stage.x[static_cast<std::size_t>(n)];
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = stage.x[static_cast<std::size_t>(i)];

    const std::vector<double> sums = coalition_sums(game, x);
    std::vector<PlayerMask> pinned;
    for (PlayerMask s : active) {
      if (sums[s] > game.value(s) - eps + kLpFeasTol) continue;  // slack row
      const LpSolution face =
          detail::nucleolus_stage_lp(game, frozen, active, true, eps, s);
      if (face.status != LpStatus::kOptimal)
        throw std::logic_error("nucleolus: face LP must be solvable");
      const double max_sum = -face.objective_value;
      if (max_sum <= game.value(s) - eps + kLpFeasTol) pinned.push_back(s);
    }
    if (pinned.empty())
      pinned.assign(1, active.front());  // numerical safety net; unreachable

    for (PlayerMask s : pinned) {
      frozen.push_back({s, game.value(s) - eps});
      active.erase(std::remove(active.begin(), active.end(), s), active.end());
    }

    std::vector<PlayerMask> system{game.full_mask()};
    for (const auto& f : frozen) system.push_back(f.mask);
    if (detail::mask_system_rank(std::move(system), n) == n) break;
  }
  return x;
}

/// Maximum excess player i can raise in a coalition that excludes player j.
inline double max_surplus(const TUGame& game, const std::vector<double>& sums,
                          int i, int j) {
  const PlayerMask full = game.full_mask();
  const PlayerMask bit_i = PlayerMask{1} << i;
  const PlayerMask bit_j = PlayerMask{1} << j;
  double best = -std::numeric_limits<double>::infinity();
  for (PlayerMask s = 1; s <= full; ++s) {
    if (!(s & bit_i) || (s & bit_j)) continue;
    best = std::max(best, game.value(s) - sums[s]);
  }
  return best;
}

/// Kernel membership for an imputation: for every ordered player pair the
/// maximum excess i can achieve without j balances the reverse.
inline bool kernel_check(const TUGame& game, const Allocation& x,
                         double tol = kLpFeasTol) {
  if (!is_imputation(game, x))
    throw std::invalid_argument("kernel_check: allocation is not an imputation");
  const int n = game.num_players();
  if (n == 1) return true;
  const std::vector<double> sums = coalition_sums(game, x);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double sij = max_surplus(game, sums, i, j);
      const double sji = max_surplus(game, sums, j, i);
      if (std::abs(sij - sji) > tol) return false;
    }
  }
  return true;
}

}  // namespace cgt

#endif  // CGT_SOLUTIONS_HPP
