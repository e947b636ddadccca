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

#include "svcache/placement.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace svcache::placement {

namespace {

constexpr std::int64_t kBruteForceGuard = 10'000'000;  // max (V+1)^M combinations
constexpr double kDpMemoryGuardBytes = 4e9;

// One DP row update: option order is MBS first, then the choice set in its
// stored order; a later option replaces the incumbent only when strictly
// better. Recovery re-evaluates the same expressions, so the arithmetic
// here must stay bit-identical to decide_choice below.
void dp_row_update(const double* prev, double* cur, std::int64_t cap, double popularity,
                   const EfficientStateSet& cs) {
  const double w_mbs = popularity * cs.mbs_qoe;
  for (std::int64_t v = 0; v <= cap; ++v) cur[v] = prev[v] + w_mbs;
  for (const EfficientState& es : cs.states) {
    const std::int64_t c = es.cost;
    if (c > cap) continue;
    const double w = popularity * es.qoe;
    for (std::int64_t v = c; v <= cap; ++v) {
      const double cand = prev[v - c] + w;
      if (cand > cur[v]) cur[v] = cand;
    }
  }
}

// First option (MBS = -1, else choice-set index) whose value matches the
// cell value exactly.
int decide_choice(const double* prev, double cell_value, std::int64_t v, double popularity,
                  const EfficientStateSet& cs) {
  if (prev[v] + popularity * cs.mbs_qoe == cell_value) return -1;
  for (int j = 0; j < static_cast<int>(cs.states.size()); ++j) {
    const std::int64_t c = cs.states[j].cost;
    if (c <= v && prev[v - c] + popularity * cs.states[j].qoe == cell_value) return j;
  }
  throw std::logic_error("solve_mckp: backtracking failed to reproduce a DP cell");
}

void require_sorted_library(const std::vector<catalog::Video>& library) {
  double prev = std::numeric_limits<double>::infinity();
  for (const catalog::Video& v : library) {
    if (v.popularity > prev) {
      throw std::invalid_argument("library popularities must be sorted nonincreasing");
    }
    prev = v.popularity;
  }
}

PlacementSolution finish_solution(std::vector<std::optional<VideoAssignment>> assignments,
                                  const std::vector<catalog::Video>& library, double mbs_q,
                                  std::int64_t capacity_units) {
  PlacementSolution sol;
  sol.assignments = std::move(assignments);
  sol.mbs_qoe = mbs_q;
  sol.capacity_units = capacity_units;
  for (std::size_t i = 0; i < sol.assignments.size(); ++i) {
    if (sol.assignments[i]) {
      sol.m_hat = static_cast<int>(i) + 1;
      sol.used_units += sol.assignments[i]->cost_units;
    }
  }
  sol.objective = objective(sol.assignments, library, mbs_q);
  return sol;
}

}  // namespace

EfficientStateSet enumerate_efficient_states(const qoe::QoeTable& table,
                                             double quantum_rate_bps) {
  const catalog::OpLadder& ladder = table.ladder();
  EfficientStateSet out;
  out.mbs_qoe = table.mbs();

  std::vector<EfficientState> candidates;
  for (int n = 1; n <= table.max_diversity(); ++n) {
    for (int l = 0; l < ladder.size(); ++l) {
      const double q = table.q(n, l);
      if (q > out.mbs_qoe) {
        const CachingState state{n, ladder.rates_bps[l]};
        candidates.push_back({state, q, catalog::normalized_cost(state, ladder, quantum_rate_bps)});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const EfficientState& a, const EfficientState& b) {
              if (a.cost != b.cost) return a.cost < b.cost;
              if (a.qoe != b.qoe) return a.qoe > b.qoe;
              if (a.state.n != b.state.n) return a.state.n < b.state.n;
              return a.state.rate_bps < b.state.rate_bps;
            });
  double best_qoe = out.mbs_qoe;
  for (const EfficientState& es : candidates) {
    if (es.qoe > best_qoe) {
      out.states.push_back(es);
      best_qoe = es.qoe;
    }
  }
  return out;
}

EfficientStateSet enumerate_efficient_states(const catalog::ClusterConfig& cfg,
                                             const catalog::OpLadder& ladder,
                                             const qoe::QoeModel& model,
                                             double quantum_rate_bps) {
  return enumerate_efficient_states(qoe::QoeTable(cfg, ladder, model), quantum_rate_bps);
}

PlacementSolution solve_mckp(const std::vector<catalog::Video>& library,
                             const EfficientStateSet& cs, std::int64_t capacity_units,
                             const SolveOptions& options) {
  if (capacity_units < 0) throw std::invalid_argument("solve_mckp: capacity must be >= 0");
  require_sorted_library(library);

  const int m_total = static_cast<int>(library.size());
  std::vector<std::optional<VideoAssignment>> assignments(m_total);
  if (cs.states.empty() || capacity_units == 0 || m_total == 0) {
    return finish_solution(std::move(assignments), library, cs.mbs_qoe, capacity_units);
  }

  const std::int64_t row_len = capacity_units + 1;
  const int block = std::max(1, static_cast<int>(std::ceil(std::sqrt(m_total))));
  const double row_bytes = static_cast<double>(row_len) * sizeof(double);
  if (row_bytes * (2.0 * block + 4.0 + m_total / static_cast<double>(block)) > kDpMemoryGuardBytes) {
    throw std::runtime_error(
        "solve_mckp: quantized capacity axis too large; use a coarser cache quantum");
  }

  // Forward pass over two rows, checkpointing every `block` videos so the
  // backtracking pass can regenerate any row from the nearest checkpoint.
  std::vector<double> prev(row_len, 0.0);
  std::vector<double> cur(row_len);
  std::vector<std::vector<double>> checkpoints;
  checkpoints.push_back(prev);

  int effective_m = m_total;
  for (int m = 1; m <= m_total; ++m) {
    dp_row_update(prev.data(), cur.data(), capacity_units, library[m - 1].popularity, cs);
    if (options.early_stop &&
        decide_choice(prev.data(), cur[capacity_units], capacity_units,
                      library[m - 1].popularity, cs) == -1) {
      effective_m = m - 1;
      break;
    }
    std::swap(prev, cur);
    if (m % block == 0 && m < m_total) checkpoints.push_back(prev);
  }

  // Backtrack block by block from (effective_m, capacity): regenerate the
  // block's rows, then peel choices from the most popular end backwards.
  std::int64_t v = capacity_units;
  std::vector<std::vector<double>> rows(block + 1, std::vector<double>(row_len));
  for (int last = effective_m; last > 0;) {
    const int chunk = (last - 1) / block;        // block index holding `last`
    const int lo = chunk * block;                // rows regenerate from video lo
    rows[0] = checkpoints[chunk];
    for (int m = lo + 1; m <= last; ++m) {
      dp_row_update(rows[m - lo - 1].data(), rows[m - lo].data(), capacity_units,
                    library[m - 1].popularity, cs);
    }
    for (int m = last; m > lo; --m) {
      const int choice = decide_choice(rows[m - lo - 1].data(), rows[m - lo][v], v,
                                       library[m - 1].popularity, cs);
      if (choice >= 0) {
        const EfficientState& es = cs.states[choice];
        assignments[m - 1] = VideoAssignment{es.state, es.qoe, es.cost};
        v -= es.cost;
      }
    }
    last = lo;
  }
  assert(v >= 0);

  return finish_solution(std::move(assignments), library, cs.mbs_qoe, capacity_units);
}

PlacementSolution solve_bruteforce(const std::vector<catalog::Video>& library,
                                   const EfficientStateSet& cs, std::int64_t capacity_units) {
  if (capacity_units < 0) throw std::invalid_argument("solve_bruteforce: capacity must be >= 0");
  require_sorted_library(library);

  const int m_total = static_cast<int>(library.size());
  const int n_options = static_cast<int>(cs.states.size()) + 1;
  double combos = 1.0;
  for (int i = 0; i < m_total; ++i) {
    combos *= n_options;
    if (combos > static_cast<double>(kBruteForceGuard)) {
      throw std::invalid_argument("solve_bruteforce: instance exceeds the enumeration guard");
    }
  }

  // Odometer over per-video options, option 0 = MBS, then choice-set order.
  // Digit of the least popular video varies slowest, so the first maximum
  // found matches the DP's backtracking preference exactly.
  std::vector<int> digits(m_total, 0);
  std::vector<int> best_digits;
  double best_value = -std::numeric_limits<double>::infinity();
  for (;;) {
    std::int64_t cost = 0;
    for (int i = 0; i < m_total; ++i) {
      if (digits[i] > 0) cost += cs.states[digits[i] - 1].cost;
    }
    if (cost <= capacity_units) {
      double value = 0.0;
      for (int i = 0; i < m_total; ++i) {
        const double q = digits[i] == 0 ? cs.mbs_qoe : cs.states[digits[i] - 1].qoe;
        value += library[i].popularity * q;
      }
      if (value > best_value) {
        best_value = value;
        best_digits = digits;
      }
    }
    int pos = 0;  // first video's digit spins fastest
    while (pos < m_total && ++digits[pos] == n_options) digits[pos++] = 0;
    if (pos == m_total) break;
  }

  std::vector<std::optional<VideoAssignment>> assignments(m_total);
  for (int i = 0; i < m_total; ++i) {
    if (!best_digits.empty() && best_digits[i] > 0) {
      const EfficientState& es = cs.states[best_digits[i] - 1];
      assignments[i] = VideoAssignment{es.state, es.qoe, es.cost};
    }
  }
  return finish_solution(std::move(assignments), library, cs.mbs_qoe, capacity_units);
}

double objective(const std::vector<std::optional<VideoAssignment>>& assignments,
                 const std::vector<catalog::Video>& library, double mbs_qoe) {
  if (assignments.size() != library.size()) {
    throw std::invalid_argument("objective: assignment/library size mismatch");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < library.size(); ++i) {
    value += library[i].popularity * (assignments[i] ? assignments[i]->qoe : mbs_qoe);
  }
  return value;
}

StaircaseReport verify_staircase(const PlacementSolution& solution,
                                 const std::vector<catalog::Video>& library) {
  if (solution.assignments.size() != library.size()) {
    return {false, "assignment/library size mismatch"};
  }
  // Collapse runs of equal popularity: ordering inside a run is free.
  struct Group {
    int first_rank;
    std::int64_t min_cost, max_cost;
    double min_qoe, max_qoe;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < library.size(); ++i) {
    const std::int64_t cost = solution.assignments[i] ? solution.assignments[i]->cost_units : 0;
    const double q = solution.assignments[i] ? solution.assignments[i]->qoe : solution.mbs_qoe;
    if (!groups.empty() && library[i].popularity == library[i - 1].popularity) {
      Group& g = groups.back();
      g.min_cost = std::min(g.min_cost, cost);
      g.max_cost = std::max(g.max_cost, cost);
      g.min_qoe = std::min(g.min_qoe, q);
      g.max_qoe = std::max(g.max_qoe, q);
    } else {
      groups.push_back({static_cast<int>(i) + 1, cost, cost, q, q});
    }
  }
  for (std::size_t g = 1; g < groups.size(); ++g) {
    const Group& hi = groups[g - 1];
    const Group& lo = groups[g];
    if (lo.max_cost > hi.min_cost) {
      return {false, "cost increases from rank " + std::to_string(hi.first_rank) + " (" +
                         std::to_string(hi.min_cost) + " units) to rank " +
                         std::to_string(lo.first_rank) + " (" + std::to_string(lo.max_cost) +
                         " units)"};
    }
    if (lo.max_qoe > hi.min_qoe) {
      return {false, "qoe increases from rank " + std::to_string(hi.first_rank) + " to rank " +
                         std::to_string(lo.first_rank)};
    }
  }
  return {};
}

void pack_to_sbs(PlacementSolution& solution, const std::vector<catalog::Video>& library,
                 const catalog::ClusterConfig& cfg, const catalog::OpLadder& ladder) {
  const int n_sbs = cfg.n_sbs;
  const double cap = cfg.cache_bytes_per_sbs;
  solution.per_sbs.assign(n_sbs, {});
  solution.demotions.clear();
  std::vector<double> load(n_sbs, 0.0);

  std::vector<int> order;
  for (std::size_t i = 0; i < solution.assignments.size(); ++i) {
    if (solution.assignments[i]) order.push_back(static_cast<int>(i));
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const std::int64_t ca = solution.assignments[a]->cost_units;
    const std::int64_t cb = solution.assignments[b]->cost_units;
    if (ca != cb) return ca > cb;
    return a < b;
  });

  std::vector<int> fits;
  for (int idx : order) {
    const VideoAssignment& va = *solution.assignments[idx];
    const double duration = library[idx].duration_s;
    const int want_n = va.state.n;
    const int want_l = ladder.index_of(va.state.rate_bps);

    bool placed = false;
    for (int copies = want_n; copies >= 1 && !placed; --copies) {
      for (int l = want_l; l >= 0 && !placed; --l) {
        const double bytes = ladder.rates_bps[l] * duration / 8.0;
        fits.clear();
        for (int s = 0; s < n_sbs; ++s) {
          if (load[s] + bytes <= cap) fits.push_back(s);
        }
        if (static_cast<int>(fits.size()) < copies) continue;
        std::sort(fits.begin(), fits.end(), [&](int a, int b) {
          if (load[a] != load[b]) return load[a] < load[b];
          return a < b;
        });
        for (int k = 0; k < copies; ++k) {
          load[fits[k]] += bytes;
          solution.per_sbs[fits[k]].push_back({idx + 1, ladder.rates_bps[l]});
        }
        if (copies != want_n || l != want_l) {
          solution.demotions.push_back(
              {idx + 1, want_n, va.state.rate_bps, copies, ladder.rates_bps[l], false});
        }
        placed = true;
      }
    }
    if (!placed) {
      solution.demotions.push_back({idx + 1, want_n, va.state.rate_bps, 0, 0.0, true});
    }
  }
  for (auto& contents : solution.per_sbs) {
    std::sort(contents.begin(), contents.end(),
              [](const SbsEntry& a, const SbsEntry& b) { return a.video_id < b.video_id; });
  }
}

}  // namespace svcache::placement
