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
//
// End-to-end acceptance suite: one pass/fail line per criterion. Run with
// --full-scale to include the long library-scale smoke run (criterion 9).

#include <sys/resource.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "svcache/placement.hpp"
#include "svcache/serialize.hpp"
#include "svcache/simulate.hpp"
#include "svcache/strategies.hpp"
#include "support/instance_gen.hpp"
#include "support/mc_oracle.hpp"

namespace fs = std::filesystem;
using namespace svcache;
using catalog::CachingState;
using catalog::OpLadder;
using placement::PlacementSolution;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

catalog::ClusterConfig reference_cluster(int n_sbs, double cache_bytes) {
  catalog::ClusterConfig cfg;
  cfg.n_sbs = n_sbs;
  cfg.cache_bytes_per_sbs = cache_bytes;
  cfg.sbs = {10.0, 5e6};
  cfg.mbs = {3.0, 2e6};
  return cfg;
}

PlacementSolution solve_reduced(int n_sbs, double cache_bytes, int m, int quantum_mult,
                                std::vector<catalog::Video>* out_lib = nullptr) {
  const OpLadder ladder = OpLadder::suggested_rates();
  const auto cfg = reference_cluster(n_sbs, cache_bytes);
  const qoe::QoeTable table(cfg, ladder, {});
  const double quantum = quantum_mult * ladder.base_rate();
  const auto cs = placement::enumerate_efficient_states(table, quantum);
  const auto lib = catalog::make_library(m, 0.8, 3600.0);
  const auto capacity = catalog::cluster_capacity_units(cfg, quantum, 3600.0);
  if (out_lib) *out_lib = lib;
  return placement::solve_mckp(lib, cs, capacity);
}

// Shared Fig. 2 shape checks: diversity at the top, breadth in the tail,
// nonincreasing cached bit-rate.
Outcome check_caching_shape(const PlacementSolution& sol) {
  if (sol.m_hat == 0 || !sol.assignments[0]) return {false, "nothing cached"};
  int multi = 0;
  int single = 0;
  double prev_rate = 1e18;
  for (int i = 0; i < sol.m_hat; ++i) {
    if (!sol.assignments[i]) return {false, "cached set is not a prefix"};
    const auto& st = sol.assignments[i]->state;
    (st.n >= 2 ? multi : single) += 1;
    if (st.rate_bps > prev_rate + 1e-9) {
      return {false, "cached bit-rate increases at rank " + std::to_string(i + 1)};
    }
    prev_rate = st.rate_bps;
  }
  std::ostringstream detail;
  detail << "m_hat=" << sol.m_hat << ", n>=2 for top video (n=" << sol.assignments[0]->state.n
         << "), " << multi << " multi-copy vs " << single << " single-copy, top rate "
         << sol.assignments[0]->state.rate_bps / 1e6 << " Mbps";
  if (sol.assignments[0]->state.n < 2) return {false, "top video has no diversity: " + detail.str()};
  if (single <= multi) return {false, "single-copy videos are not the majority: " + detail.str()};
  if (sol.assignments[0]->state.rate_bps < 7.2e6) {
    return {false, "top video rate below R9: " + detail.str()};
  }
  return {true, detail.str()};
}

// --- criterion 1 ---------------------------------------------------------
Outcome criterion_solver_exactness() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(424242);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = test::random_instance(gen, 6, 4, 20);
    const auto dp = placement::solve_mckp(inst.library, inst.cs, inst.capacity);
    const auto brute = placement::solve_bruteforce(inst.library, inst.cs, inst.capacity);
    if (dp.objective != brute.objective) {
      return {false, "objective mismatch on trial " + std::to_string(trial)};
    }
    for (std::size_t i = 0; i < dp.assignments.size(); ++i) {
      const bool has = dp.assignments[i].has_value();
      if (has != brute.assignments[i].has_value() ||
          (has && !(dp.assignments[i]->state == brute.assignments[i]->state))) {
        return {false, "assignment mismatch on trial " + std::to_string(trial)};
      }
    }
    ++checked;
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) return {false, "exceeded the 10 s budget"};
  std::ostringstream detail;
  detail << checked << " instances exact (objective and assignment), " << elapsed << " s";
  return {true, detail.str()};
}

// --- criteria 2 and 3 ----------------------------------------------------
struct GridResult {
  Outcome mc_agreement;
  Outcome telescoping;
};

GridResult criterion_grid() {
  const auto start = std::chrono::steady_clock::now();
  const OpLadder ladder = OpLadder::suggested_rates();
  const channel::ChannelParams profiles[2] = {{10.0, 5e6}, {3.0, 2e6}};
  const long trials = 1'000'000;

  int cells = 0;
  int agree = 0;
  double max_mass_err = 0.0;
  std::uint32_t seed = 52u;
  for (const auto& ch : profiles) {
    for (int n = 1; n <= 5; ++n) {
      for (int l = 0; l < ladder.size(); ++l) {
        const double r = ladder.rates_bps[l];
        const double analytic = qoe::expected_qoe(CachingState{n, r}, ladder, ch, {});
        const auto mc = test::mc_expected_qoe(n, r, ladder, ch, {}, trials, seed++);
        ++cells;
        // 5.0 = MOS range scales the rule-of-three unseen-mass bound.
        if (mc.within_3se(analytic, 5.0 * 3.0 / trials)) ++agree;

        double mass = 1.0 - channel::outage_probability(n, r, ch);
        for (int k = 0; k < l; ++k) {
          mass += channel::outage_probability(n, ladder.rates_bps[k + 1], ch) -
                  channel::outage_probability(n, ladder.rates_bps[k], ch);
        }
        mass += channel::outage_probability(n, ladder.rates_bps[0], ch);
        max_mass_err = std::max(max_mass_err, std::fabs(mass - 1.0));
      }
    }
  }
  const double elapsed = seconds_since(start);

  GridResult result;
  std::ostringstream mc_detail;
  mc_detail << agree << "/" << cells << " cells within 3 SE at 1e6 trials, " << elapsed << " s";
  result.mc_agreement = {agree >= static_cast<int>(std::ceil(0.95 * cells)) && elapsed < 120.0,
                         mc_detail.str()};
  std::ostringstream mass_detail;
  mass_detail << "max |mass - 1| = " << max_mass_err << " over " << cells << " cells";
  result.telescoping = {max_mass_err <= 1e-12, mass_detail.str()};
  return result;
}

// --- criterion 4 ---------------------------------------------------------
Outcome criterion_staircase() {
  std::ostringstream detail;
  for (int n_sbs : {3, 5}) {
    for (double cache : {1e12, 2e12}) {
      const auto start = std::chrono::steady_clock::now();
      std::vector<catalog::Video> lib;
      const auto sol = solve_reduced(n_sbs, cache, 2000, 10, &lib);
      const auto report = placement::verify_staircase(sol, lib);
      const double elapsed = seconds_since(start);
      if (!report.ok) {
        return {false, "violation at N=" + std::to_string(n_sbs) + ": " + report.violation};
      }
      if (elapsed >= 300.0) return {false, "config exceeded the 5 min budget"};
      detail << "(N=" << n_sbs << ", C=" << cache / 1e12 << " TB: m_hat=" << sol.m_hat << ", "
             << elapsed << " s) ";
    }
  }
  return {true, "staircase holds on all four reduced configurations " + detail.str()};
}

// --- criterion 5 ---------------------------------------------------------
Outcome criterion_caching_shape() {
  const auto sol = solve_reduced(3, 2e12, 2000, 10);
  return check_caching_shape(sol);
}

// --- criterion 6 ---------------------------------------------------------
Outcome criterion_qoe_hit_tendency() {
  const OpLadder ladder = OpLadder::suggested_rates();
  const auto lib = catalog::make_library(2000, 0.8, 3600.0);
  const double mbs_only = qoe::mbs_qoe(ladder, {3.0, 2e6}, {});

  auto objective_at = [&](int n, double c) { return solve_reduced(n, c, 2000, 10).objective; };
  auto hit_at = [&](int n, double c) {
    return sim::hit_ratio_analytic(solve_reduced(n, c, 2000, 10), lib);
  };

  const double q11 = objective_at(1, 1e12);
  const double q31 = objective_at(3, 1e12);
  const double q51 = objective_at(5, 1e12);
  const double q32 = objective_at(3, 2e12);
  if (!(q11 <= q31 && q31 <= q51)) return {false, "objective not nondecreasing in N"};
  if (!(q31 <= q32)) return {false, "objective not nondecreasing in C"};
  if (!(mbs_only < q11)) return {false, "MBS-only does not score strictly lowest"};
  // At equal total storage, a second station (diversity) beats doubling a
  // single cache.
  if (objective_at(2, 1e12) < objective_at(1, 2e12)) {
    return {false, "adding a station does not beat doubling a single cache"};
  }

  const double h_1x2 = hit_at(1, 2e12);
  const double h_2x1 = hit_at(2, 1e12);
  const double h_1x1 = hit_at(1, 1e12);
  const double h_2x05 = hit_at(2, 0.5e12);
  if (std::fabs(h_1x2 - h_2x1) > 0.02) {
    return {false, "hit ratio differs across the 2 TB split by more than 0.02"};
  }
  if (std::fabs(h_1x1 - h_2x05) > 0.02) {
    return {false, "hit ratio differs across the 1 TB split by more than 0.02"};
  }
  std::ostringstream detail;
  detail << "objectives " << q11 << " <= " << q31 << " <= " << q51 << ", C-growth to " << q32
         << ", MBS-only " << mbs_only << "; hit splits |" << h_1x2 << " - " << h_2x1 << "|, |"
         << h_1x1 << " - " << h_2x05 << "| within 0.02";
  return {true, detail.str()};
}

// --- criterion 7 ---------------------------------------------------------
Outcome criterion_snr_sweep() {
  const auto start = std::chrono::steady_clock::now();
  const OpLadder ladder = OpLadder::suggested_rates();
  const auto lib = catalog::make_library(2000, 0.8, 3600.0);
  const std::vector<double> rates = {4.8e6, 7.2e6, 10.4e6};
  const std::vector<double> snrs = {0, 2, 4, 6, 8, 10, 12, 14};
  const long trials = 200'000;

  // objective[snr][strategy]: 0 proposed, then dmp@r..., then mhr@r...
  std::vector<std::vector<double>> objective(snrs.size());
  std::vector<std::vector<double>> simulated(snrs.size());
  std::vector<std::vector<double>> sim_se(snrs.size());
  for (std::size_t s = 0; s < snrs.size(); ++s) {
    auto cfg = reference_cluster(3, 2e12);
    cfg.sbs.avg_snr_db = snrs[s];
    const qoe::QoeTable table(cfg, ladder, {});
    const auto cs = placement::enumerate_efficient_states(table, ladder.base_rate());
    const auto capacity = catalog::cluster_capacity_units(cfg, ladder.base_rate(), 3600.0);

    std::vector<PlacementSolution> sols;
    sols.push_back(placement::solve_mckp(lib, cs, capacity));
    for (double r : rates) {
      sols.push_back(strategies::place_dmp(lib, cfg, ladder, r, table, ladder.base_rate()));
    }
    for (double r : rates) {
      sols.push_back(strategies::place_mhr(lib, cfg, ladder, r, table, ladder.base_rate()));
    }
    for (const auto& sol : sols) {
      objective[s].push_back(sol.objective);
      const auto report = sim::estimate(sol, lib, ladder, cfg, {}, trials, 31, 2);
      simulated[s].push_back(report.avg_qoe);
      sim_se[s].push_back(report.avg_qoe_se);
    }
  }

  for (std::size_t s = 0; s < snrs.size(); ++s) {
    for (std::size_t k = 1; k < objective[s].size(); ++k) {
      if (objective[s][0] < objective[s][k]) {
        return {false, "a baseline beats the proposed objective at " +
                           std::to_string(snrs[s]) + " dB"};
      }
      const double slack = 3.0 * std::hypot(sim_se[s][0], sim_se[s][k]);
      if (simulated[s][0] < simulated[s][k] - slack) {
        return {false, "a baseline beats the proposed simulated QoE at " +
                           std::to_string(snrs[s]) + " dB"};
      }
    }
  }

  // Crossover: DMP@r wins somewhere below, MHR@r somewhere above.
  bool crossover = false;
  std::string crossover_detail = "no crossover found";
  for (std::size_t r = 0; r < rates.size() && !crossover; ++r) {
    int dmp_wins_until = -1;
    for (std::size_t s = 0; s < snrs.size(); ++s) {
      const double dmp = objective[s][1 + r];
      const double mhr = objective[s][1 + rates.size() + r];
      if (dmp > mhr) dmp_wins_until = static_cast<int>(s);
    }
    for (std::size_t s = 0; s < snrs.size(); ++s) {
      const double dmp = objective[s][1 + r];
      const double mhr = objective[s][1 + rates.size() + r];
      if (mhr > dmp && dmp_wins_until >= 0 && static_cast<int>(s) > dmp_wins_until) {
        bool low_dmp = false;
        for (std::size_t t = 0; t < s; ++t) {
          if (objective[t][1 + r] > objective[t][1 + rates.size() + r]) low_dmp = true;
        }
        if (low_dmp) {
          crossover = true;
          crossover_detail = "crossover for rate " + std::to_string(rates[r] / 1e6) +
                             " Mbps below " + std::to_string(snrs[s]) + " dB";
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (!crossover) return {false, crossover_detail};
  if (elapsed >= 900.0) return {false, "exceeded the 15 min budget"};
  return {true, "proposed dominates at all 8 SNRs; " + crossover_detail + "; " +
                    std::to_string(elapsed) + " s"};
}

// --- criterion 8 ---------------------------------------------------------
int run_cli(const std::string& args) {
  const std::string cmd = std::string(SVCACHE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / "svcache_acceptance";
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "config.json");
    cfg << R"({"library": {"m": 500}, "cluster": {"cache_bytes": 2e11},
               "solver": {"quantum_mult": 10}, "sim": {"trials": 200000, "seed": 3}})";
  }
  const std::string config = (dir / "config.json").string();
  if (run_cli("solve --config " + config + " --out " + (dir / "s1.json").string()) != 0 ||
      run_cli("solve --config " + config + " --out " + (dir / "s2.json").string()) != 0) {
    return {false, "solve invocation failed"};
  }
  if (serialize::read_file((dir / "s1.json").string()) !=
          serialize::read_file((dir / "s2.json").string()) ||
      serialize::read_file((dir / "s1.csv").string()) !=
          serialize::read_file((dir / "s2.csv").string())) {
    return {false, "repeated solve outputs differ"};
  }
  const std::string sim_base =
      "simulate --config " + config + " --solution " + (dir / "s1.json").string();
  if (run_cli(sim_base + " --threads 1 --out " + (dir / "r1.json").string()) != 0 ||
      run_cli(sim_base + " --threads 1 --out " + (dir / "r2.json").string()) != 0 ||
      run_cli(sim_base + " --threads 4 --out " + (dir / "r4.json").string()) != 0) {
    return {false, "simulate invocation failed"};
  }
  const std::string r1 = serialize::read_file((dir / "r1.json").string());
  if (r1 != serialize::read_file((dir / "r2.json").string())) {
    return {false, "repeated simulate outputs differ"};
  }
  if (r1 != serialize::read_file((dir / "r4.json").string())) {
    return {false, "simulate output depends on the thread count"};
  }
  return {true, "solve and simulate byte-identical across reruns and thread counts"};
}

// --- criterion 9 ---------------------------------------------------------
Outcome criterion_full_scale() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<catalog::Video> lib;
  const auto sol = solve_reduced(3, 2e12, 10000, 1, &lib);
  const double solve_s = seconds_since(start);

  const auto staircase = placement::verify_staircase(sol, lib);
  if (!staircase.ok) return {false, "staircase violation: " + staircase.violation};
  const Outcome shape = check_caching_shape(sol);
  if (!shape.pass) return {false, shape.detail};

  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_gb = usage.ru_maxrss / 1024.0 / 1024.0;
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "M=10000 at the base quantum: " << solve_s << " s solve, " << elapsed
         << " s total, peak rss " << peak_gb << " GB, " << shape.detail;
  if (elapsed >= 1800.0) return {false, "exceeded the 30 min budget: " + detail.str()};
  if (peak_gb >= 2.0) return {false, "exceeded the 2 GB budget: " + detail.str()};
  return {true, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  bool full_scale = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--full-scale") full_scale = true;
  }

  int failures = 0;
  auto report = [&failures](int id, const std::string& name, const Outcome& outcome) {
    std::cout << "criterion " << id << " (" << name << "): " << (outcome.pass ? "PASS" : "FAIL")
              << " - " << outcome.detail << "\n"
              << std::flush;
    if (!outcome.pass) ++failures;
  };

  report(1, "solver exactness vs brute force", criterion_solver_exactness());
  const GridResult grid = criterion_grid();
  report(2, "analytic vs Monte Carlo QoE grid", grid.mc_agreement);
  report(3, "probability mass telescoping", grid.telescoping);
  report(4, "staircase structure", criterion_staircase());
  report(5, "caching state shape", criterion_caching_shape());
  report(6, "QoE and hit-ratio tendency", criterion_qoe_hit_tendency());
  report(7, "SNR sweep vs baselines", criterion_snr_sweep());
  report(8, "deterministic CLI outputs", criterion_determinism());
  if (full_scale) {
    report(9, "full-scale smoke run", criterion_full_scale());
  } else {
    std::cout << "criterion 9 (full-scale smoke run): SKIP - run with --full-scale\n";
  }

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
