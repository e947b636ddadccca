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

#ifndef SVCACHE_PLACEMENT_HPP
#define SVCACHE_PLACEMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svcache/catalog.hpp"
#include "svcache/qoe.hpp"

namespace svcache::placement {

using catalog::CachingState;

struct EfficientState {
  CachingState state;
  double qoe = 0.0;        // expected MOS under this state
  std::int64_t cost = 0;   // cache units consumed cluster-wide
};

// Pareto frontier of (cost, qoe) over the n x rate grid, restricted to
// states that beat MBS delivery. Sorted so qoe and cost increase together;
// this is the per-video choice set of the knapsack.
struct EfficientStateSet {
  std::vector<EfficientState> states;
  double mbs_qoe = 0.0;
};

struct VideoAssignment {
  CachingState state;
  double qoe = 0.0;
  std::int64_t cost_units = 0;
};

struct SbsEntry {
  int video_id = 0;
  double rate_bps = 0.0;
};

struct Demotion {
  int video_id = 0;
  int n_before = 0;
  double rate_before = 0.0;
  int n_after = 0;          // 0 when the video was dropped entirely
  double rate_after = 0.0;
  bool dropped = false;
};

struct PlacementSolution {
  // Index = popularity rank - 1; empty slot = served by MBS.
  std::vector<std::optional<VideoAssignment>> assignments;
  int m_hat = 0;
  double objective = 0.0;
  double mbs_qoe = 0.0;
  std::int64_t used_units = 0;
  std::int64_t capacity_units = 0;

  // Materialization, filled by pack_to_sbs (or directly by baselines).
  std::vector<std::vector<SbsEntry>> per_sbs;
  std::vector<Demotion> demotions;
};

// Evaluates q(n, r) over the full grid, drops states that do not beat MBS
// delivery, then drops dominated states (another state at most as costly
// with at least as much QoE). Equal (cost, qoe) duplicates collapse to the
// lowest diversity, then lowest rate.
EfficientStateSet enumerate_efficient_states(const qoe::QoeTable& table,
                                             double quantum_rate_bps);
EfficientStateSet enumerate_efficient_states(const catalog::ClusterConfig& cfg,
                                             const catalog::OpLadder& ladder,
                                             const qoe::QoeModel& model,
                                             double quantum_rate_bps);

struct SolveOptions {
  // Stop the DP at the first video whose best choice at full capacity is
  // MBS service, serving it and everything less popular from the MBS.
  bool early_stop = false;
};

// Exact multiple-choice knapsack over the cluster-level capacity: each
// video picks one efficient state or MBS service. Ties are broken
// identically to solve_bruteforce: MBS before any cached state, then
// choice-set order (lower cost first), decided from the least popular
// video down.
PlacementSolution solve_mckp(const std::vector<catalog::Video>& library,
                             const EfficientStateSet& cs, std::int64_t capacity_units,
                             const SolveOptions& options = {});

// Exhaustive oracle over every per-video choice; guarded to
// (V+1)^M <= 10^7 combinations. Same tie rule as solve_mckp.
PlacementSolution solve_bruteforce(const std::vector<catalog::Video>& library,
                                   const EfficientStateSet& cs, std::int64_t capacity_units);

// Sum of p_i * qoe_i with MBS filling unassigned slots, accumulated in
// rank order (bit-identical to the DP's accumulation).
double objective(const std::vector<std::optional<VideoAssignment>>& assignments,
                 const std::vector<catalog::Video>& library, double mbs_qoe);

struct StaircaseReport {
  bool ok = true;
  std::string violation;  // first offending pair, empty when ok
};

// Checks that cache cost and QoE are nonincreasing in popularity rank
// (MBS-served videos count as cost 0 / q^MBS). Videos with equal
// popularity may appear in any order.
StaircaseReport verify_staircase(const PlacementSolution& solution,
                                 const std::vector<catalog::Video>& library);

// Materializes each video's copies onto distinct SBSs, most expensive
// video first, always into the least-loaded stations. A copy set that no
// longer fits is demoted to the highest ladder rate (and then the largest
// copy count) that does; a video that cannot fit even one base-rate copy
// is dropped. Fills solution.per_sbs and solution.demotions.
void pack_to_sbs(PlacementSolution& solution, const std::vector<catalog::Video>& library,
                 const catalog::ClusterConfig& cfg, const catalog::OpLadder& ladder);

}  // namespace svcache::placement

#endif  // SVCACHE_PLACEMENT_HPP
