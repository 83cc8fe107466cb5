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

#ifndef CGT_NETFORM_HPP
#define CGT_NETFORM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cgt/game.hpp"
#include "cgt/geometry.hpp"

namespace cgt {

/// Points at the base station in relay parent pointers.
inline constexpr int kBaseStation = -1;

/// Knobs of the relay utility model. Per-hop delivery succeeds with
/// probability exp(-(d/d0)^2 * nu); a relay pays link_cost per maintained
/// link and earns child_reward per unit of traffic it forwards for others.
struct NetformParams {
  double hop_scale = 1.0;     // d0, meters
  double decay = 1.0;         // nu
  double link_cost = 0.0;     // utility per incident link
  double child_reward = 0.0;  // utility per unit of relayed traffic
  int max_links = 4;          // incident-link capacity per relay

  void validate() const {
    if (!(hop_scale > 0.0)) throw std::invalid_argument("hop_scale must be > 0");
    if (!(decay > 0.0)) throw std::invalid_argument("decay must be > 0");
    if (link_cost < 0.0) throw std::invalid_argument("link_cost must be >= 0");
    if (child_reward < 0.0)
      throw std::invalid_argument("child_reward must be >= 0");
    if (max_links < 1) throw std::invalid_argument("max_links must be >= 1");
  }
};

/// Uplink tree state: every relay points at one parent (another relay or the
/// base station) and the pointers must form a forest rooted at the BS.
struct NetworkState {
  std::vector<Point> node_positions;
  Point bs_position;
  std::vector<int> parent;       // kBaseStation or a relay index
  std::vector<double> traffic;   // packets per relay and frame

  int num_relays() const { return static_cast<int>(node_positions.size()); }

  Point position_of(int node) const {
    return node == kBaseStation ? bs_position
                                : node_positions[static_cast<std::size_t>(node)];
  }
};

inline double hop_success(Point a, Point b, const NetformParams& params) {
  const double d = distance(a, b) / params.hop_scale;
  return std::exp(-d * d * params.decay);
}

/// True iff every relay reaches the base station by following parents.
inline bool is_forest(const NetworkState& state) {
  const int n = state.num_relays();
  for (int i = 0; i < n; ++i) {
    int node = i;
    for (int hops = 0; node != kBaseStation; ++hops) {
      if (hops > n) return false;  // cycle
      node = state.parent[static_cast<std::size_t>(node)];
      if (node != kBaseStation && (node < 0 || node >= n)) return false;
    }
  }
  return true;
}

namespace netform_detail {

inline void require_forest(const NetworkState& state) {
  if (state.parent.size() != state.node_positions.size() ||
      state.traffic.size() != state.node_positions.size())
    throw std::invalid_argument("network state: array length mismatch");
  if (!is_forest(state))
    throw std::invalid_argument("network state: cycle in parent pointers");
}

/// Packet success ratio of the multi-hop path from a relay to the BS.
inline double path_success(const NetworkState& state,
                           const NetformParams& params, int relay) {
  double p = 1.0;
  int node = relay;
  while (node != kBaseStation) {
    const int up = state.parent[static_cast<std::size_t>(node)];
    p *= hop_success(state.position_of(node), state.position_of(up), params);
    node = up;
  }
  return p;
}

/// Own traffic plus everything collected from the subtree below the relay.
inline double subtree_traffic(const NetworkState& state, int relay) {
  const int n = state.num_relays();
  double total = state.traffic[static_cast<std::size_t>(relay)];
  for (int j = 0; j < n; ++j) {
    if (j == relay) continue;
    int node = j;
    while (node != kBaseStation && node != relay)
      node = state.parent[static_cast<std::size_t>(node)];
    if (node == relay) total += state.traffic[static_cast<std::size_t>(j)];
  }
  return total;
}

inline int child_count(const NetworkState& state, int relay) {
  int c = 0;
  for (int p : state.parent) c += (p == relay);
  return c;
}

inline int incident_links(const NetworkState& state, int relay) {
  return child_count(state, relay) + 1;  // children plus the parent link
}

}  // namespace netform_detail

/// Utility of one relay in a forest state: the traffic it injects (own plus
/// relayed) weighted by the end-to-end packet success ratio of its uplink
/// path, plus a reward for traffic forwarded on behalf of others, minus a
/// cost per maintained link.
inline double relay_utility(const NetworkState& state,
                            const NetformParams& params, int relay) {
  params.validate();
  netform_detail::require_forest(state);
  const double total = netform_detail::subtree_traffic(state, relay);
  const double own = state.traffic[static_cast<std::size_t>(relay)];
  const double psr = netform_detail::path_success(state, params, relay);
  return total * psr + params.child_reward * (total - own) -
         params.link_cost * netform_detail::incident_links(state, relay);
}

struct NetformResult {
  NetworkState state;
  int rounds = 0;
  bool converged = false;
};

namespace netform_detail {

/// Would attaching `child` under `target` keep the structure a forest and
/// respect the target's link capacity? On success writes the post-move state
/// (which may have evicted the target's lowest-reward child to the BS).
inline bool try_attach(const NetworkState& state, const NetformParams& params,
                       int child, int target, NetworkState& out) {
  if (target != kBaseStation) {
    // No cycles: the target must not sit in the child's subtree.
    int node = target;
    while (node != kBaseStation) {
      if (node == child) return false;
      node = state.parent[static_cast<std::size_t>(node)];
    }
  }
  out = state;
  if (target == kBaseStation) {  // the BS accepts unconditionally
    out.parent[static_cast<std::size_t>(child)] = kBaseStation;
    return true;
  }
  if (incident_links(state, target) + 1 <= params.max_links) {
    out.parent[static_cast<std::size_t>(child)] = target;
    return true;
  }
  // At capacity: the target may replace its lowest-reward child, but only if
  // doing so strictly improves its own utility; otherwise it rejects.
  int worst = -1;
  double worst_reward = 0.0;
  for (int j = 0; j < state.num_relays(); ++j) {
    if (state.parent[static_cast<std::size_t>(j)] != target) continue;
    const double reward = params.child_reward * subtree_traffic(state, j);
    if (worst < 0 || reward < worst_reward) {
      worst = j;
      worst_reward = reward;
    }
  }
  if (worst < 0) return false;  // capacity filled by the parent link alone
  out.parent[static_cast<std::size_t>(worst)] = kBaseStation;
  out.parent[static_cast<std::size_t>(child)] = target;
  return relay_utility(out, params, target) >
         relay_utility(state, params, target);
}

/// Best feasible parent for one relay; returns true and the post-move state
/// when some choice strictly beats the current utility.
inline bool best_response(const NetworkState& state,
                          const NetformParams& params, int relay,
                          NetworkState& best_state) {
  const double current = relay_utility(state, params, relay);
  double best = current;
  bool improved = false;
  auto consider = [&](int target) {
    if (target == state.parent[static_cast<std::size_t>(relay)]) return;
    NetworkState moved;
    if (!try_attach(state, params, relay, target, moved)) return;
    const double u = relay_utility(moved, params, relay);
    if (strictly_greater(u, best)) {
      best = u;
      best_state = moved;
      improved = true;
    }
  };
  consider(kBaseStation);
  for (int j = 0; j < state.num_relays(); ++j)
    if (j != relay) consider(j);
  return improved;
}

}  // namespace netform_detail

/// Myopic best-response tree formation. All relays start wired to the BS;
/// then, sweeping relays by priority (farthest from the BS first, ties by
/// index), each relay adopts the feasible parent that maximizes its own
/// utility, with strict improvement required. Stops on the first quiet
/// sweep, or flags non-convergence after 100 * n sweeps.
///
/// The sweep itself is deterministic; `seed` is accepted for interface
/// stability with randomized priority policies and is unused here.
inline NetformResult run_network_formation(const std::vector<Point>& positions,
                                           Point bs_position,
                                           const std::vector<double>& traffic,
                                           const NetformParams& params,
                                           std::uint64_t seed = 0) {
  (void)seed;
  params.validate();
  const int n = static_cast<int>(positions.size());
  if (n < 1) throw std::invalid_argument("network formation: no relays");
  if (traffic.size() != positions.size())
    throw std::invalid_argument("network formation: traffic length mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (positions[static_cast<std::size_t>(i)] == positions[static_cast<std::size_t>(j)])
        throw std::invalid_argument("network formation: duplicate positions");

  NetformResult result;
  result.state.node_positions = positions;
  result.state.bs_position = bs_position;
  result.state.traffic = traffic;
  result.state.parent.assign(static_cast<std::size_t>(n), kBaseStation);

  std::vector<int> priority(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) priority[static_cast<std::size_t>(i)] = i;
  std::stable_sort(priority.begin(), priority.end(), [&](int a, int b) {
    return distance(positions[static_cast<std::size_t>(a)], bs_position) >
           distance(positions[static_cast<std::size_t>(b)], bs_position);
  });

  const int round_cap = 100 * n;
  for (int round = 1; round <= round_cap; ++round) {
    bool changed = false;
    for (int relay : priority) {
      NetworkState moved;
      if (netform_detail::best_response(result.state, params, relay, moved)) {
        result.state = std::move(moved);
        changed = true;
      }
    }
    if (!changed) {
      result.rounds = round;
      result.converged = true;
      return result;
    }
  }
  result.rounds = round_cap;
  result.converged = false;
  return result;
}

/// True iff no single relay can strictly improve its utility by re-pointing
/// its parent link, under the same feasibility rules the formation uses.
inline bool nash_network_check(const NetworkState& state,
                               const NetformParams& params) {
  params.validate();
  netform_detail::require_forest(state);
  for (int i = 0; i < state.num_relays(); ++i) {
    NetworkState moved;
    if (netform_detail::best_response(state, params, i, moved)) return false;
  }
  return true;
}

}  // namespace cgt

#endif  // CGT_NETFORM_HPP
