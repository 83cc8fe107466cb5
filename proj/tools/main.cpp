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

// File-driven command line front end: load games, graphs, partitions and
// relay layouts, dispatch the solvers, and render reports as human tables or
// machine-readable JSON. Exit codes: 0 success, 1 domain error, 2 usage
// error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgt/cgt.hpp"
#include "cgt/io.hpp"

namespace {

using cgt::Json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// Tolerance for `check` subcommands; overridable through CGT_TOLERANCE.
double check_tolerance(double fallback) {
  if (const char* env = std::getenv("CGT_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
    throw std::runtime_error("CGT_TOLERANCE must be a positive number");
  }
  return fallback;
}

void print_report(const std::string& command, const Json& result,
                  const Json& diagnostics, const std::string& human,
                  bool as_json) {
  if (as_json) {
    Json j{{"command", command},
           {"result", result},
           {"diagnostics", diagnostics}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

std::string allocation_table(const cgt::Allocation& x) {
  std::ostringstream os;
  os << "  player      payoff\n";
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << "  " << i << "           " << fmt(x[i]) << "\n";
    total += x[i];
  }
  os << "  total       " << fmt(total) << "\n";
  return os.str();
}

std::string partition_line(const cgt::Partition& p) {
  return cgt::to_string(p);
}

cgt::Allocation parse_payoffs(const std::string& text) {
  cgt::Allocation out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size())
      throw std::runtime_error("bad payoff entry: " + tok);
  }
  if (out.empty()) throw std::runtime_error("empty payoff list");
  return out;
}

std::vector<cgt::Point> parse_positions(const std::string& text) {
  std::vector<cgt::Point> out;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("positions must look like x,y;x,y;...");
    out.push_back(
        {std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
  }
  if (out.empty()) throw std::runtime_error("empty position list");
  return out;
}

cgt::ComparisonOrder make_order(const std::string& order,
                                const std::string& payoff) {
  cgt::ComparisonOrder out;
  if (order == "utilitarian")
    out.kind = cgt::OrderKind::kUtilitarian;
  else if (order == "pareto")
    out.kind = cgt::OrderKind::kPareto;
  else
    throw std::runtime_error("unknown order: " + order);
  if (payoff == "equal")
    out.payoff_rule = cgt::PayoffRule::kEqualSplit;
  else if (payoff == "shapley")
    out.payoff_rule = cgt::PayoffRule::kShapleyPerBlock;
  else if (payoff == "nucleolus")
    out.payoff_rule = cgt::PayoffRule::kNucleolusPerBlock;
  else if (payoff == "identity")
    out.payoff_rule = cgt::PayoffRule::kIdentity;
  else
    throw std::runtime_error("unknown payoff rule: " + payoff);
  return out;
}

void emit_game(const cgt::TUGame& game, const std::string& out_path) {
  const std::string text = cgt::write_game_file(game);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    out << text;
  }
}

// ---------------------------------------------------------------------------
// solve

void run_solve_shapley(const std::string& game_path, long samples,
                       std::uint64_t seed, bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  cgt::Allocation phi;
  Json diag{{"tolerance", cgt::kTol}};
  if (samples > 0) {
    phi = cgt::shapley_sampled(game, samples, seed);
    diag["samples"] = samples;
    diag["seed"] = seed;
  } else {
    phi = cgt::shapley_exact(game);
  }
  print_report("solve shapley", Json{{"allocation", phi}}, diag,
               "shapley value\n" + allocation_table(phi), as_json);
}

void run_solve_nucleolus(const std::string& game_path, bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  const cgt::Allocation x = cgt::nucleolus(game);
  print_report("solve nucleolus", Json{{"allocation", x}},
               Json{{"tolerance", cgt::kLpFeasTol}},
               "nucleolus\n" + allocation_table(x), as_json);
}

void run_solve_core(const std::string& game_path, bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  const cgt::CoreResult res = cgt::core_nonempty(game);
  Json result{{"nonempty", res.nonempty}};
  std::ostringstream human;
  human << "core " << (res.nonempty ? "nonempty" : "empty") << "\n";
  if (res.sample_point) {
    result["sample_point"] = *res.sample_point;
    human << allocation_table(*res.sample_point);
  }
  print_report("solve core", result,
               Json{{"tolerance", cgt::kLpFeasTol},
                    {"lp_objective", res.lp_objective},
                    {"lp_iterations", res.lp_iterations}},
               human.str(), as_json);
}

void run_solve_myerson(const std::string& game_path,
                       const std::string& graph_path, bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  const cgt::GameGraph graph = cgt::graph_from_json(cgt::load_json(graph_path));
  const cgt::Allocation x = cgt::myerson_value(game, graph);
  print_report("solve myerson", Json{{"allocation", x}},
               Json{{"tolerance", cgt::kTol}},
               "myerson value\n" + allocation_table(x), as_json);
}

// ---------------------------------------------------------------------------
// check

void run_check_property(const std::string& which, const std::string& game_path,
                        bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  const double tol = check_tolerance(cgt::kTol);
  const cgt::PropertyReport rep = which == "superadditive"
                                      ? cgt::check_superadditive(game, tol)
                                      : cgt::check_convex(game, tol);
  Json result{{"holds", rep.holds}};
  std::ostringstream human;
  human << which << ": " << (rep.holds ? "holds" : "violated") << "\n";
  if (rep.witness) {
    result["witness"] = {rep.witness->first.members(),
                         rep.witness->second.members()};
    human << "  witness: " << cgt::to_string(rep.witness->first) << " "
          << cgt::to_string(rep.witness->second) << "\n";
  }
  print_report("check " + which, result, Json{{"tolerance", tol}}, human.str(),
               as_json);
}

void run_check_balanced(const std::string& game_path, bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  const cgt::BalancednessResult res = cgt::check_balanced(game);
  Json result{{"balanced", res.balanced}};
  std::ostringstream human;
  human << "balanced: " << (res.balanced ? "yes" : "no") << "\n";
  if (res.violating_weights) {
    Json w = Json::object();
    for (const auto& [coal, weight] : res.violating_weights->weights) {
      w[cgt::to_string(coal)] = weight;
      human << "  weight " << cgt::to_string(coal) << " = " << fmt(weight)
            << "\n";
    }
    result["violating_weights"] = w;
  }
  print_report("check balanced", result,
               Json{{"tolerance", cgt::kLpFeasTol},
                    {"lp_value", res.lp_value},
                    {"lp_iterations", res.lp_iterations}},
               human.str(), as_json);
}

void run_check_allocation(const std::string& which,
                          const std::string& game_path,
                          const std::string& payoffs, bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  const cgt::Allocation x = parse_payoffs(payoffs);
  bool ok = false;
  double tol = 0.0;
  if (which == "imputation") {
    tol = check_tolerance(cgt::kTol);
    ok = cgt::is_imputation(game, x, tol);
  } else {
    tol = check_tolerance(cgt::kLpFeasTol);
    ok = cgt::kernel_check(game, x, tol);
  }
  print_report("check " + which, Json{{"holds", ok}}, Json{{"tolerance", tol}},
               which + ": " + (ok ? "yes" : "no") + "\n", as_json);
}

// ---------------------------------------------------------------------------
// form

cgt::Partition initial_partition(const std::string& init,
                                 const cgt::TUGame& game) {
  if (init == "singletons") return cgt::Partition::singletons(game.num_players());
  if (init == "grand") return cgt::Partition::grand(game.num_players());
  return cgt::partition_from_json(cgt::load_json(init), game.num_players());
}

void run_form_merge_split(const std::string& game_path,
                          const std::string& order, const std::string& payoff,
                          const std::string& init, bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  const cgt::ComparisonOrder cmp = make_order(order, payoff);
  const cgt::FormationTrace trace =
      cgt::run_merge_split(game, cmp, initial_partition(init, game));

  Json steps = Json::array();
  std::ostringstream human;
  human << "merge-split (" << order << ")\n";
  for (const auto& step : trace.steps) {
    const bool is_merge = step.kind == cgt::FormationStep::Kind::kMerge;
    Json before = Json::array(), after = Json::array();
    human << "  " << (is_merge ? "merge" : "split") << ":";
    for (auto c : step.before) {
      before.push_back(c.members());
      human << " " << cgt::to_string(c);
    }
    human << " ->";
    for (auto c : step.after) {
      after.push_back(c.members());
      human << " " << cgt::to_string(c);
    }
    human << "\n";
    steps.push_back(
        Json{{"op", is_merge ? "merge" : "split"}, {"before", before}, {"after", after}});
  }
  human << "  final: " << partition_line(trace.final_partition) << "\n";
  human << "  welfare: " << fmt(cgt::social_welfare(game, trace.final_partition))
        << "\n";
  print_report(
      "form merge-split",
      Json{{"steps", steps},
           {"final", cgt::partition_to_json(trace.final_partition)["blocks"]},
           {"welfare", cgt::social_welfare(game, trace.final_partition)}},
      Json{{"order", order}, {"payoff_rule", payoff}}, human.str(), as_json);
}

void run_form_dc_check(const std::string& game_path, const std::string& order,
                       const std::string& payoff, bool as_json) {
  const cgt::TUGame game = cgt::load_game(game_path);
  const cgt::ComparisonOrder cmp = make_order(order, payoff);
  const std::optional<cgt::Partition> dc = cgt::dc_candidate(game, cmp);
  Json result;
  std::ostringstream human;
  if (dc) {
    result = Json{{"found", true},
                  {"partition", cgt::partition_to_json(*dc)["blocks"]},
                  {"welfare", cgt::social_welfare(game, *dc)}};
    human << "stable partition: " << partition_line(*dc) << "\n";
  } else {
    result = Json{{"found", false}};
    human << "stable partition: absent (runs disagree)\n";
  }
  print_report("form dc-check", result,
               Json{{"order", order}, {"payoff_rule", payoff}}, human.str(),
               as_json);
}

// ---------------------------------------------------------------------------
// netform

Json netform_state_json(const cgt::NetformScenario& sc,
                        const cgt::NetworkState& state) {
  cgt::NetformScenario out = sc;
  out.parents = state.parent;
  return cgt::netform_to_json(out);
}

std::string netform_table(const cgt::NetworkState& state,
                          const cgt::NetformParams& params) {
  std::ostringstream os;
  os << "  relay  parent  utility\n";
  for (int i = 0; i < state.num_relays(); ++i) {
    const int p = state.parent[static_cast<std::size_t>(i)];
    os << "  " << i << "      " << (p == cgt::kBaseStation ? std::string("BS") : std::to_string(p))
       << "      " << fmt(cgt::relay_utility(state, params, i)) << "\n";
  }
  return os.str();
}

void run_netform_run(const std::string& layout_path, std::uint64_t seed,
                     bool as_json) {
  const cgt::NetformScenario sc = cgt::netform_from_json(cgt::load_json(layout_path));
  const cgt::NetformResult res = cgt::run_network_formation(
      sc.positions, sc.bs_position, sc.traffic, sc.params, seed);
  std::ostringstream human;
  human << "network formation: " << (res.converged ? "converged" : "no convergence")
        << " after " << res.rounds << " round(s)\n"
        << netform_table(res.state, sc.params);
  print_report("netform run",
               Json{{"state", netform_state_json(sc, res.state)},
                    {"rounds", res.rounds},
                    {"converged", res.converged}},
               Json{{"seed", seed}}, human.str(), as_json);
  if (!res.converged) throw std::runtime_error("network formation did not converge");
}

void run_netform_check(const std::string& layout_path, bool as_json) {
  const cgt::NetformScenario sc = cgt::netform_from_json(cgt::load_json(layout_path));
  if (!sc.parents)
    throw std::runtime_error("netform check: layout has no \"parents\" array");
  cgt::NetworkState state;
  state.node_positions = sc.positions;
  state.bs_position = sc.bs_position;
  state.traffic = sc.traffic;
  state.parent = *sc.parents;
  const bool nash = cgt::nash_network_check(state, sc.params);
  print_report("netform check", Json{{"nash_network", nash}}, Json::object(),
               std::string("nash network: ") + (nash ? "yes" : "no") + "\n" +
                   netform_table(state, sc.params),
               as_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coalitional game toolkit"};
  app.require_subcommand(1);

  std::string game_path, graph_path, payoffs, out_path;
  std::string order = "utilitarian", payoff_rule = "equal", init = "singletons";
  bool as_json = false;
  long samples = 0;
  std::uint64_t seed = 0;
  int n_players = 0;

  // solve
  auto* solve = app.add_subcommand("solve", "compute a solution concept");
  solve->require_subcommand(1);
  auto add_game = [&](CLI::App* cmd) {
    cmd->add_option("game", game_path, "game file (JSON)")->required();
    cmd->add_flag("--json", as_json, "machine-readable output");
  };
  auto* sv_shapley = solve->add_subcommand("shapley", "Shapley value");
  add_game(sv_shapley);
  sv_shapley->add_option("--samples", samples,
                         "Monte Carlo sample count (0 = exact)");
  sv_shapley->add_option("--seed", seed, "sampling seed");
  sv_shapley->callback([&] { run_solve_shapley(game_path, samples, seed, as_json); });

  auto* sv_nucleolus = solve->add_subcommand("nucleolus", "nucleolus");
  add_game(sv_nucleolus);
  sv_nucleolus->callback([&] { run_solve_nucleolus(game_path, as_json); });

  auto* sv_core = solve->add_subcommand("core", "core emptiness and a member");
  add_game(sv_core);
  sv_core->callback([&] { run_solve_core(game_path, as_json); });

  auto* sv_myerson = solve->add_subcommand("myerson", "Myerson value");
  add_game(sv_myerson);
  sv_myerson->add_option("--graph", graph_path, "graph file (JSON)")->required();
  sv_myerson->callback([&] { run_solve_myerson(game_path, graph_path, as_json); });

  // check
  auto* check = app.add_subcommand("check", "verify a property of a game");
  check->require_subcommand(1);
  for (const std::string which : {"superadditive", "convex"}) {
    auto* cmd = check->add_subcommand(which, which + std::string(" check"));
    add_game(cmd);
    cmd->callback([&, which] { run_check_property(which, game_path, as_json); });
  }
  auto* ck_balanced = check->add_subcommand("balanced", "balancedness check");
  add_game(ck_balanced);
  ck_balanced->callback([&] { run_check_balanced(game_path, as_json); });
  for (const std::string which : {"imputation", "kernel"}) {
    auto* cmd = check->add_subcommand(which, which + std::string(" check"));
    add_game(cmd);
    cmd->add_option("--payoffs", payoffs, "comma-separated allocation")->required();
    cmd->callback([&, which] { run_check_allocation(which, game_path, payoffs, as_json); });
  }

  // form
  auto* form = app.add_subcommand("form", "coalition formation dynamics");
  form->require_subcommand(1);
  auto add_order = [&](CLI::App* cmd) {
    cmd->add_option("--order", order, "utilitarian|pareto")
        ->check(CLI::IsMember({"utilitarian", "pareto"}));
    cmd->add_option("--payoff", payoff_rule, "equal|shapley|nucleolus|identity")
        ->check(CLI::IsMember({"equal", "shapley", "nucleolus", "identity"}));
  };
  auto* fm_ms = form->add_subcommand("merge-split", "merge-and-split iteration");
  add_game(fm_ms);
  add_order(fm_ms);
  fm_ms->add_option("--init", init, "singletons|grand|<partition file>");
  fm_ms->callback(
      [&] { run_form_merge_split(game_path, order, payoff_rule, init, as_json); });

  auto* fm_dc = form->add_subcommand("dc-check",
                                     "unique merge-split outcome over all starts");
  add_game(fm_dc);
  add_order(fm_dc);
  fm_dc->callback([&] { run_form_dc_check(game_path, order, payoff_rule, as_json); });

  // netform
  auto* netform = app.add_subcommand("netform", "uplink tree formation");
  netform->require_subcommand(1);
  auto* nf_run = netform->add_subcommand("run", "form a tree by best responses");
  nf_run->add_option("layout", game_path, "layout file (JSON)")->required();
  nf_run->add_flag("--json", as_json, "machine-readable output");
  nf_run->add_option("--seed", seed, "reserved for randomized policies");
  nf_run->callback([&] { run_netform_run(game_path, seed, as_json); });
  auto* nf_check = netform->add_subcommand("check", "Nash-network check");
  nf_check->add_option("layout", game_path, "layout file with parents")->required();
  nf_check->add_flag("--json", as_json, "machine-readable output");
  nf_check->callback([&] { run_netform_check(game_path, as_json); });

  // scenario
  auto* scenario = app.add_subcommand("scenario", "emit a generated game file");
  scenario->require_subcommand(1);
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("-o,--out", out_path, "output path (default stdout)");
  };

  auto* sc_majority = scenario->add_subcommand("majority", "majority voting game");
  sc_majority->add_option("--n", n_players, "player count")->required();
  add_out(sc_majority);
  sc_majority->callback([&] { emit_game(cgt::majority_voting_game(n_players), out_path); });

  std::vector<double> claims;
  double estate = 0.0;
  auto* sc_bankruptcy = scenario->add_subcommand("bankruptcy", "estate division game");
  sc_bankruptcy->add_option("--claims", claims, "per-player claims")
      ->required()
      ->delimiter(',');
  sc_bankruptcy->add_option("--estate", estate, "estate to divide")->required();
  add_out(sc_bankruptcy);
  sc_bankruptcy->callback(
      [&] { emit_game(cgt::bankruptcy_game({claims, estate}), out_path); });

  std::vector<double> powers;
  double noise = 1.0;
  auto* sc_mac = scenario->add_subcommand("mac", "multiple-access rate game");
  sc_mac->add_option("--powers", powers, "per-user transmit powers")
      ->required()
      ->delimiter(',');
  sc_mac->add_option("--noise", noise, "noise variance");
  add_out(sc_mac);
  sc_mac->callback([&] { emit_game(cgt::gaussian_mac_game({powers, noise}), out_path); });

  std::string positions;
  cgt::MimoParams mimo;
  auto* sc_mimo = scenario->add_subcommand("mimo", "pooled-antenna uplink game");
  sc_mimo->add_option("--positions", positions, "x,y;x,y;... transmitter locations")
      ->required();
  sc_mimo->add_option("--budget", mimo.power_budget, "power budget per slot");
  sc_mimo->add_option("--kappa", mimo.exchange_exponent, "exchange path-loss exponent");
  sc_mimo->add_option("--p0", mimo.exchange_scale, "exchange power scale");
  sc_mimo->add_option("--antennas", mimo.rx_antennas, "receiver antenna count");
  sc_mimo->add_option("--noise", mimo.noise_variance, "noise variance");
  add_out(sc_mimo);
  sc_mimo->callback([&] {
    mimo.positions = parse_positions(positions);
    emit_game(cgt::virtual_mimo_game(mimo), out_path);
  });

  cgt::CssParams css;
  auto* sc_css = scenario->add_subcommand("css", "collaborative sensing game");
  sc_css->add_option("--miss", css.miss_prob, "per-user miss probabilities")
      ->required()
      ->delimiter(',');
  sc_css->add_option("--false-alarm", css.false_alarm_prob,
                     "per-user false alarm probabilities")
      ->required()
      ->delimiter(',');
  sc_css->add_option("--alpha", css.alarm_cap, "false alarm cap");
  sc_css->add_option("--beta", css.cost_weight, "false alarm cost weight");
  add_out(sc_css);
  sc_css->callback([&] { emit_game(cgt::css_sensing_game(css), out_path); });

  // partitions
  auto* partitions = app.add_subcommand("partitions", "partition combinatorics");
  partitions->require_subcommand(1);
  auto* pt_count = partitions->add_subcommand("count", "number of partitions of n players");
  pt_count->add_option("--n", n_players, "player count")->required();
  pt_count->add_flag("--json", as_json, "machine-readable output");
  pt_count->callback([&] {
    const std::uint64_t bell = cgt::count_partitions(n_players);
    print_report("partitions count", Json{{"n", n_players}, {"count", bell}},
                 Json::object(), std::to_string(bell) + "\n", as_json);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits clean, usage errors exit 2
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
