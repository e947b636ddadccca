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

#ifndef SVCACHE_STRATEGIES_HPP
#define SVCACHE_STRATEGIES_HPP

#include "svcache/placement.hpp"

namespace svcache::strategies {

enum class BaselineKind { kDmp, kMhr };

struct BaselineSpec {
  BaselineKind kind = BaselineKind::kDmp;
  double fixed_rate_bps = 0.0;  // must be a ladder rate
};

// Duplicate-most-popular: every SBS caches the same top-k videos at the
// fixed rate, k = floor(C / copy size). Full diversity, minimal breadth.
placement::PlacementSolution place_dmp(const std::vector<catalog::Video>& library,
                                       const catalog::ClusterConfig& cfg,
                                       const catalog::OpLadder& ladder, double fixed_rate_bps,
                                       const qoe::QoeTable& table, double quantum_rate_bps);

// Max-hit-ratio: one copy per video spread round-robin, k = N * floor(C /
// copy size). Maximal breadth, no diversity.
placement::PlacementSolution place_mhr(const std::vector<catalog::Video>& library,
                                       const catalog::ClusterConfig& cfg,
                                       const catalog::OpLadder& ladder, double fixed_rate_bps,
                                       const qoe::QoeTable& table, double quantum_rate_bps);

placement::PlacementSolution place_baseline(const BaselineSpec& spec,
                                            const std::vector<catalog::Video>& library,
                                            const catalog::ClusterConfig& cfg,
                                            const catalog::OpLadder& ladder,
                                            const qoe::QoeTable& table, double quantum_rate_bps);

}  // namespace svcache::strategies

#endif  // SVCACHE_STRATEGIES_HPP
