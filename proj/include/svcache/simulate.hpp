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

#ifndef SVCACHE_SIMULATE_HPP
#define SVCACHE_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "svcache/placement.hpp"
#include "svcache/random.hpp"

namespace svcache::sim {

struct SimReport {
  std::int64_t trials = 0;
  double avg_qoe = 0.0;
  double avg_qoe_se = 0.0;
  double hit_ratio = 0.0;
  double hit_ratio_se = 0.0;
  double stall_prob = 0.0;
  std::vector<double> per_rank_qoe;  // filled only when requested
};

struct RequestOutcome {
  double mos = 0.0;
  bool hit = false;
  bool stall = false;
  int video_rank = 0;
};

// Request-level transmission simulator: draws a video by popularity, one
// max-SNR realization from the serving tier, and scores the highest
// decodable operation point. One SNR draw per request (quasi-static
// fading).
class RequestSimulator {
 public:
  RequestSimulator(const placement::PlacementSolution& solution,
                   const std::vector<catalog::Video>& library, const catalog::OpLadder& ladder,
                   const catalog::ClusterConfig& cfg, const qoe::QoeModel& model);

  RequestOutcome simulate(Rng& rng) const;

 private:
  const placement::PlacementSolution& solution_;
  const catalog::OpLadder& ladder_;
  catalog::ClusterConfig cfg_;
  std::vector<double> popularity_cdf_;
  std::vector<double> op_mos_;  // MOS of each ladder OP, top normalized to 5
};

// Single-draw convenience wrapper around RequestSimulator.
RequestOutcome simulate_request(const placement::PlacementSolution& solution,
                                const std::vector<catalog::Video>& library,
                                const catalog::OpLadder& ladder,
                                const catalog::ClusterConfig& cfg, const qoe::QoeModel& model,
                                Rng& rng);

// Averages simulate_request over `trials` draws. Trial t uses the
// substream derived from (seed, t) and trials aggregate in fixed-size
// chunks combined in chunk order, so the report is identical for any
// thread count. per_rank forces single-threaded accumulation.
SimReport estimate(const placement::PlacementSolution& solution,
                   const std::vector<catalog::Video>& library, const catalog::OpLadder& ladder,
                   const catalog::ClusterConfig& cfg, const qoe::QoeModel& model,
                   std::int64_t trials, std::uint64_t seed, int n_threads = 1,
                   bool per_rank = false);

// Total popularity mass of videos with at least one cached copy.
double hit_ratio_analytic(const placement::PlacementSolution& solution,
                          const std::vector<catalog::Video>& library);

// Probability the delivered rate falls below the base operation point.
double stall_prob_analytic(const placement::PlacementSolution& solution,
                           const std::vector<catalog::Video>& library,
                           const catalog::OpLadder& ladder, const catalog::ClusterConfig& cfg);

}  // namespace svcache::sim

#endif  // SVCACHE_SIMULATE_HPP
