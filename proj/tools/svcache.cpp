// Copyright 2026 The svcache Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svcache/config.hpp"
#include "svcache/placement.hpp"
#include "svcache/serialize.hpp"
#include "svcache/simulate.hpp"
#include "svcache/strategies.hpp"

namespace {

using svcache::config::ConfigError;
using svcache::config::Experiment;
using svcache::config::ExperimentConfig;

std::string default_csv_path(const std::string& json_path) {
  const std::size_t dot = json_path.find_last_of('.');
  const std::size_t slash = json_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return json_path + ".csv";
  }
  return json_path.substr(0, dot) + ".csv";
}

svcache::placement::PlacementSolution make_mbs_only(const Experiment& exp) {
  svcache::placement::PlacementSolution sol;
  sol.assignments.resize(exp.library.size());
  sol.mbs_qoe = svcache::qoe::mbs_qoe(exp.ladder, exp.cluster.mbs, exp.model);
  sol.capacity_units = exp.capacity_units;
  sol.per_sbs.assign(exp.cluster.n_sbs, {});
  sol.objective = svcache::placement::objective(sol.assignments, exp.library, sol.mbs_qoe);
  return sol;
}

struct StrategyChoice {
  std::string name;  // as printed in the CSV
  enum class Kind { kProposed, kDmp, kMhr, kMbsOnly } kind = Kind::kProposed;
  double rate_bps = 0.0;
};

StrategyChoice parse_strategy(const std::string& token, const svcache::catalog::OpLadder& ladder) {
  StrategyChoice choice;
  choice.name = token;
  if (token == "proposed") {
    choice.kind = StrategyChoice::Kind::kProposed;
    return choice;
  }
  if (token == "mbs") {
    choice.kind = StrategyChoice::Kind::kMbsOnly;
    return choice;
  }
  const std::size_t at = token.find('@');
  if (at != std::string::npos) {
    const std::string head = token.substr(0, at);
    double mbps = 0.0;
    try {
      mbps = std::stod(token.substr(at + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad strategy rate in '" + token + "'");
    }
    try {
      choice.rate_bps = ladder.rates_bps[ladder.index_of(mbps * 1e6)];
    } catch (const std::invalid_argument&) {
      throw ConfigError("strategy rate " + std::to_string(mbps) + " Mbps is not on the ladder");
    }
    if (head == "dmp") {
      choice.kind = StrategyChoice::Kind::kDmp;
      return choice;
    }
    if (head == "mhr") {
      choice.kind = StrategyChoice::Kind::kMhr;
      return choice;
    }
  }
  throw ConfigError("unknown strategy '" + token + "' (expected proposed, mbs, dmp@R, mhr@R)");
}

svcache::placement::PlacementSolution run_strategy(const StrategyChoice& choice,
                                                   const Experiment& exp,
                                                   const svcache::qoe::QoeTable& table) {
  switch (choice.kind) {
    case StrategyChoice::Kind::kProposed: {
      const auto cs = svcache::placement::enumerate_efficient_states(table, exp.quantum_rate_bps);
      svcache::placement::SolveOptions options;
      options.early_stop = exp.solver.early_stop;
      auto sol = svcache::placement::solve_mckp(exp.library, cs, exp.capacity_units, options);
      sol.capacity_units = exp.capacity_units;
      return sol;
    }
    case StrategyChoice::Kind::kDmp:
    case StrategyChoice::Kind::kMhr: {
      const svcache::strategies::BaselineSpec spec{
          choice.kind == StrategyChoice::Kind::kDmp ? svcache::strategies::BaselineKind::kDmp
                                                    : svcache::strategies::BaselineKind::kMhr,
          choice.rate_bps};
      return svcache::strategies::place_baseline(spec, exp.library, exp.cluster, exp.ladder,
                                                 table, exp.quantum_rate_bps);
    }
    case StrategyChoice::Kind::kMbsOnly:
      return make_mbs_only(exp);
  }
  throw std::logic_error("unhandled strategy kind");
}

int cmd_solve(const std::string& config_path, const std::string& out_path,
              std::optional<int> quantum_mult, bool early_stop, std::string csv_path) {
  ExperimentConfig cfg = svcache::config::load_config(config_path);
  if (quantum_mult) cfg.solver.quantum_mult = *quantum_mult;
  if (early_stop) cfg.solver.early_stop = true;
  const Experiment exp = svcache::config::build_experiment(cfg);

  const svcache::qoe::QoeTable table(exp.cluster, exp.ladder, exp.model);
  const auto cs = svcache::placement::enumerate_efficient_states(table, exp.quantum_rate_bps);
  svcache::placement::SolveOptions options;
  options.early_stop = exp.solver.early_stop;
  auto solution = svcache::placement::solve_mckp(exp.library, cs, exp.capacity_units, options);
  svcache::placement::pack_to_sbs(solution, exp.library, exp.cluster, exp.ladder);

  if (csv_path.empty()) csv_path = default_csv_path(out_path);
  svcache::serialize::write_file(out_path, svcache::serialize::solution_to_json(solution));
  svcache::serialize::write_file(csv_path, svcache::serialize::solution_csv(solution, exp.library));

  std::cout << "cached " << solution.m_hat << " of " << exp.library.size() << " videos, objective "
            << solution.objective << ", capacity " << solution.used_units << "/"
            << solution.capacity_units << " units, " << solution.demotions.size() << " demotions\n"
            << "solution: " << out_path << "\nper-video csv: " << csv_path << "\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& solution_path,
                 std::optional<std::int64_t> trials, std::optional<std::uint64_t> seed,
                 std::optional<int> threads, const std::string& out_path) {
  ExperimentConfig cfg = svcache::config::load_config(config_path);
  if (trials) cfg.sim.trials = *trials;
  if (seed) cfg.sim.seed = *seed;
  if (threads) cfg.sim.threads = *threads;
  const Experiment exp = svcache::config::build_experiment(cfg);

  const svcache::qoe::QoeTable table(exp.cluster, exp.ladder, exp.model);
  svcache::placement::PlacementSolution solution;
  try {
    solution = svcache::serialize::solution_from_json(
        svcache::serialize::read_file(solution_path), static_cast<int>(exp.library.size()),
        exp.ladder, table, exp.quantum_rate_bps);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(std::string("solution does not fit this config: ") + e.what());
  }

  const auto report = svcache::sim::estimate(solution, exp.library, exp.ladder, exp.cluster,
                                             exp.model, exp.sim.trials, exp.sim.seed,
                                             exp.sim.threads);
  svcache::serialize::write_file(out_path, svcache::serialize::report_to_json(report, exp.sim.seed));
  std::cout << "trials " << report.trials << ": avg_qoe " << report.avg_qoe << " (se "
            << report.avg_qoe_se << "), hit_ratio " << report.hit_ratio << ", stall_prob "
            << report.stall_prob << "\nreport: " << out_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<double>& values, std::vector<std::string> strategy_tokens,
              std::optional<std::int64_t> trials, std::optional<std::uint64_t> seed,
              std::optional<int> threads, const std::string& out_path) {
  ExperimentConfig base = svcache::config::load_config(config_path);
  if (trials) base.sim.trials = *trials;
  if (seed) base.sim.seed = *seed;
  if (threads) base.sim.threads = *threads;
  if (axis != "n_sbs" && axis != "cache_bytes" && axis != "sbs_snr_db") {
    throw ConfigError("unknown sweep axis '" + axis + "' (expected n_sbs, cache_bytes, sbs_snr_db)");
  }
  if (values.empty()) throw ConfigError("sweep needs at least one axis value");
  if (strategy_tokens.empty()) strategy_tokens.push_back("proposed");
  if (std::find(strategy_tokens.begin(), strategy_tokens.end(), "mbs") == strategy_tokens.end()) {
    strategy_tokens.push_back("mbs");  // always keep the MBS-only reference
  }

  std::vector<svcache::serialize::SweepRow> rows;
  for (double value : values) {
    ExperimentConfig cfg = base;
    if (axis == "n_sbs") {
      const int n = static_cast<int>(value);
      if (n < 1 || static_cast<double>(n) != value) {
        throw ConfigError("n_sbs sweep values must be positive integers");
      }
      cfg.cluster.n_sbs = n;
    } else if (axis == "cache_bytes") {
      cfg.cluster.cache_bytes = value;
    } else {
      cfg.cluster.sbs_snr_db = value;
    }
    const Experiment exp = svcache::config::build_experiment(cfg);
    const svcache::qoe::QoeTable table(exp.cluster, exp.ladder, exp.model);
    for (const std::string& token : strategy_tokens) {
      const StrategyChoice choice = parse_strategy(token, exp.ladder);
      const auto solution = run_strategy(choice, exp, table);
      // Every row reuses the config seed: common random numbers across
      // strategies and axis points.
      const auto report = svcache::sim::estimate(solution, exp.library, exp.ladder, exp.cluster,
                                                 exp.model, exp.sim.trials, exp.sim.seed,
                                                 exp.sim.threads);
      rows.push_back({axis, value, choice.name, report});
    }
  }
  svcache::serialize::write_file(out_path, svcache::serialize::sweep_csv(rows));
  std::cout << rows.size() << " sweep rows written to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QoE-aware proactive caching of scalable videos over small cell networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string csv_path;
  std::string solution_path;
  std::string axis;
  std::vector<double> values;
  std::vector<std::string> strategies;
  std::optional<int> quantum_mult;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool early_stop = false;

  CLI::App* solve = app.add_subcommand("solve", "compute the optimal placement");
  solve->add_option("--config", config_path, "experiment config JSON")->required();
  solve->add_option("--out", out_path, "solution JSON output path")->required();
  solve->add_option("--csv", csv_path, "per-video CSV output path (default: <out>.csv)");
  solve->add_option("--quantum-mult", quantum_mult, "cache quantum multiplier override");
  solve->add_flag("--early-stop", early_stop, "stop the DP at the first MBS-served video");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate for a placement");
  simulate->add_option("--config", config_path, "experiment config JSON")->required();
  simulate->add_option("--solution", solution_path, "solution JSON from solve")->required();
  simulate->add_option("--trials", trials, "trial count override");
  simulate->add_option("--seed", seed, "seed override");
  simulate->add_option("--threads", threads, "worker thread override");
  simulate->add_option("--out", out_path, "report JSON output path")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "strategy comparison across a parameter axis");
  sweep->add_option("--config", config_path, "experiment config JSON")->required();
  sweep->add_option("--axis", axis, "n_sbs, cache_bytes, or sbs_snr_db")->required();
  sweep->add_option("--values", values, "axis values")->required()->delimiter(',');
  sweep->add_option("--strategies", strategies, "proposed, mbs, dmp@R, mhr@R")->delimiter(',');
  sweep->add_option("--trials", trials, "trial count override");
  sweep->add_option("--seed", seed, "seed override");
  sweep->add_option("--threads", threads, "worker thread override");
  sweep->add_option("--out", out_path, "sweep CSV output path")->required();

  try {
    app.parse(argc, argv);
    if (solve->parsed()) {
      return cmd_solve(config_path, out_path, quantum_mult, early_stop, csv_path);
    }
    if (simulate->parsed()) {
      return cmd_simulate(config_path, solution_path, trials, seed, threads, out_path);
    }
    return cmd_sweep(config_path, axis, values, strategies, trials, seed, threads, out_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
