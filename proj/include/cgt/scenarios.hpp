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

#ifndef CGT_SCENARIOS_HPP
#define CGT_SCENARIOS_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cgt/game.hpp"
#include "cgt/geometry.hpp"

namespace cgt {

/// Three-player majority voting: singletons carry no weight, any pair takes
/// two thirds of the vote, the full bench takes it all.
inline TUGame majority_voting_game(int num_players) {
  if (num_players != 3)
    throw std::invalid_argument(
        "majority_voting_game: only the 3-player instance is defined");
  std::vector<double> v(8, 0.0);
  v[3] = v[5] = v[6] = 2.0 / 3.0;
  v[7] = 1.0;
  return TUGame(3, std::move(v));
}

/// An estate to divide among creditors with fixed claims.
struct BankruptcyParams {
  std::vector<double> claims;  // c_i > 0
  double estate = 0.0;         // alpha >= 0
};

/// v(S) = max(0, estate - sum of claims outside S): a coalition is worth
/// whatever is left after everyone else has been paid in full. Requires the
/// estate not to exceed the total claims, so the empty coalition stays at 0.
inline TUGame bankruptcy_game(const BankruptcyParams& params) {
  const int n = static_cast<int>(params.claims.size());
  if (n < 1) throw std::invalid_argument("bankruptcy_game: no claimants");
  double total_claims = 0.0;
  for (double c : params.claims) {
    if (!(c > 0.0)) throw std::invalid_argument("bankruptcy_game: claims must be > 0");
    total_claims += c;
  }
  if (params.estate < 0.0)
    throw std::invalid_argument("bankruptcy_game: estate must be >= 0");
  if (params.estate > total_claims)
    throw std::invalid_argument(
        "bankruptcy_game: estate exceeds total claims");

  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (PlayerMask s = 1; s < (PlayerMask{1} << n); ++s) {
    double outside = 0.0;
    for (int i = 0; i < n; ++i)
      if (!((s >> i) & 1u)) outside += params.claims[static_cast<std::size_t>(i)];
    v[s] = std::max(0.0, params.estate - outside);
  }
  return TUGame(n, std::move(v));
}

/// Transmit powers of users sharing a Gaussian multiple-access channel.
struct MacParams {
  std::vector<double> powers;    // watts, > 0
  double noise_variance = 1.0;   // watts, > 0
};

/// Worth of a coalition = the sum-rate it can guarantee when everyone outside
/// pools their power into interference:
/// v(S) = log2(1 + P(S) / (noise + P(N\S))), in bits/s/Hz.
inline TUGame gaussian_mac_game(const MacParams& params) {
  const int n = static_cast<int>(params.powers.size());
  if (n < 1) throw std::invalid_argument("gaussian_mac_game: no users");
  for (double p : params.powers)
    if (!(p > 0.0))
      throw std::invalid_argument("gaussian_mac_game: powers must be > 0");
  if (!(params.noise_variance > 0.0))
    throw std::invalid_argument("gaussian_mac_game: noise must be > 0");

  double total_power = 0.0;
  for (double p : params.powers) total_power += p;
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (PlayerMask s = 1; s < (PlayerMask{1} << n); ++s) {
    double inside = 0.0;
    for (int i = 0; i < n; ++i)
      if ((s >> i) & 1u) inside += params.powers[static_cast<std::size_t>(i)];
    v[s] = std::log2(1.0 + inside /
                               (params.noise_variance + (total_power - inside)));
  }
  return TUGame(n, std::move(v));
}

/// Single-antenna transmitters pooling antennas in a slotted uplink. Sharing
/// data before a joint transmission burns part of the per-slot power budget.
struct MimoParams {
  std::vector<Point> positions;      // transmitter locations, meters
  double power_budget = 1.0;         // watts per slot, > 0
  double exchange_exponent = 2.0;    // kappa >= 2
  double exchange_scale = 1.0;       // P0, watts
  int rx_antennas = 1;               // M >= 1
  double noise_variance = 1.0;       // watts, > 0
};

/// Exchange cost of S: every member pays exchange_scale * d^kappa to reach
/// its farthest partner. What remains of the budget feeds a joint link with
/// multiplexing gain min(|S|, M):
/// v(S) = min(|S|, M) * log2(1 + (budget - cost) / noise), or 0 when the
/// exchange alone eats the budget.
inline TUGame virtual_mimo_game(const MimoParams& params) {
  const int n = static_cast<int>(params.positions.size());
  if (n < 1 || n > 12)
    throw std::invalid_argument("virtual_mimo_game: need 1..12 users");
  if (!(params.power_budget > 0.0))
    throw std::invalid_argument("virtual_mimo_game: budget must be > 0");
  if (params.exchange_exponent < 2.0)
    throw std::invalid_argument("virtual_mimo_game: exponent must be >= 2");
  if (params.exchange_scale < 0.0)
    throw std::invalid_argument("virtual_mimo_game: exchange scale must be >= 0");
  if (params.rx_antennas < 1)
    throw std::invalid_argument("virtual_mimo_game: need >= 1 rx antenna");
  if (!(params.noise_variance > 0.0))
    throw std::invalid_argument("virtual_mimo_game: noise must be > 0");

  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (PlayerMask s = 1; s < (PlayerMask{1} << n); ++s) {
    double exchange = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!((s >> i) & 1u)) continue;
      double farthest = 0.0;
      for (int j = 0; j < n; ++j)
        if ((s >> j) & 1u)
          farthest = std::max(
              farthest, distance(params.positions[static_cast<std::size_t>(i)],
                                 params.positions[static_cast<std::size_t>(j)]));
      exchange += params.exchange_scale *
                  std::pow(farthest, params.exchange_exponent);
    }
    if (exchange >= params.power_budget) {
      v[s] = 0.0;
    } else {
      const int streams = std::min(std::popcount(s), params.rx_antennas);
      v[s] = streams * std::log2(1.0 + (params.power_budget - exchange) /
                                           params.noise_variance);
    }
  }
  return TUGame(n, std::move(v));
}

/// Secondary users pooling their detectors, under a cap on how often the
/// fused detector may cry wolf.
struct CssParams {
  std::vector<double> miss_prob;        // per SU, in (0,1)
  std::vector<double> false_alarm_prob; // per SU, in (0,1), each <= alarm_cap
  double alarm_cap = 0.1;               // alpha, in (0,1)
  double cost_weight = 1.0;             // beta >= 0
};

/// OR-rule fusion: the coalition misses only when every member misses, and
/// alarms when anyone does. v(S) = (1 - Qm) - beta*(Qf/alpha)^2 while the
/// fused false alarm stays within the cap, else 0. Payoffs are not
/// transferable here — every member of S obtains v(S) itself — so formation
/// over these games should use the Pareto order with the identity rule.
inline TUGame css_sensing_game(const CssParams& params) {
  const int n = static_cast<int>(params.miss_prob.size());
  if (n < 1 || n > 12)
    throw std::invalid_argument("css_sensing_game: need 1..12 secondary users");
  if (params.false_alarm_prob.size() != params.miss_prob.size())
    throw std::invalid_argument("css_sensing_game: probability length mismatch");
  if (!(params.alarm_cap > 0.0 && params.alarm_cap < 1.0))
    throw std::invalid_argument("css_sensing_game: alarm cap must be in (0,1)");
  if (params.cost_weight < 0.0)
    throw std::invalid_argument("css_sensing_game: cost weight must be >= 0");
  for (int i = 0; i < n; ++i) {
    const double pm = params.miss_prob[static_cast<std::size_t>(i)];
    const double pf = params.false_alarm_prob[static_cast<std::size_t>(i)];
    if (!(pm > 0.0 && pm < 1.0) || !(pf > 0.0 && pf < 1.0))
      throw std::invalid_argument("css_sensing_game: probabilities must be in (0,1)");
    if (pf > params.alarm_cap)
      throw std::invalid_argument(
          "css_sensing_game: single-user false alarm already above the cap");
  }

  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (PlayerMask s = 1; s < (PlayerMask{1} << n); ++s) {
    double miss = 1.0, quiet = 1.0;
    for (int i = 0; i < n; ++i) {
      if (!((s >> i) & 1u)) continue;
      miss *= params.miss_prob[static_cast<std::size_t>(i)];
      quiet *= 1.0 - params.false_alarm_prob[static_cast<std::size_t>(i)];
    }
    const double false_alarm = 1.0 - quiet;
    if (false_alarm <= params.alarm_cap) {
      const double ratio = false_alarm / params.alarm_cap;
      v[s] = (1.0 - miss) - params.cost_weight * ratio * ratio;
    }
  }
  return TUGame(n, std::move(v));
}

}  // namespace cgt

#endif  // CGT_SCENARIOS_HPP
