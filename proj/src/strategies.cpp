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

#include "svcache/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svcache::strategies {

namespace {

using placement::PlacementSolution;
using placement::VideoAssignment;

PlacementSolution make_fixed_rate_solution(const std::vector<catalog::Video>& library,
                                           const catalog::ClusterConfig& cfg,
                                           const catalog::OpLadder& ladder, double fixed_rate_bps,
                                           int copies_per_video, int cached_count,
                                           const qoe::QoeTable& table, double quantum_rate_bps) {
  PlacementSolution sol;
  sol.assignments.resize(library.size());
  sol.mbs_qoe = table.mbs();
  sol.capacity_units = catalog::cluster_capacity_units(
      cfg, quantum_rate_bps, library.empty() ? 1.0 : library.front().duration_s);
  sol.per_sbs.assign(cfg.n_sbs, {});

  const catalog::CachingState state{copies_per_video, fixed_rate_bps};
  const double q = table.q(state);
  const std::int64_t cost = catalog::normalized_cost(state, ladder, quantum_rate_bps);
  for (int i = 0; i < cached_count; ++i) {
    sol.assignments[i] = VideoAssignment{state, q, cost};
    sol.used_units += cost;
  }
  sol.m_hat = cached_count;
  sol.objective = placement::objective(sol.assignments, library, sol.mbs_qoe);
  return sol;
}

}  // namespace

PlacementSolution place_dmp(const std::vector<catalog::Video>& library,
                            const catalog::ClusterConfig& cfg, const catalog::OpLadder& ladder,
                            double fixed_rate_bps, const qoe::QoeTable& table,
                            double quantum_rate_bps) {
  ladder.index_of(fixed_rate_bps);  // must be on the ladder
  cfg.validate();
  if (library.empty()) throw std::invalid_argument("place_dmp: empty library");

  const double copy_bytes = fixed_rate_bps * library.front().duration_s / 8.0;
  const int k = std::min<std::int64_t>(
      static_cast<std::int64_t>(std::floor(cfg.cache_bytes_per_sbs / copy_bytes)),
      static_cast<std::int64_t>(library.size()));
  PlacementSolution sol = make_fixed_rate_solution(library, cfg, ladder, fixed_rate_bps,
                                                   cfg.n_sbs, k, table, quantum_rate_bps);
  for (int s = 0; s < cfg.n_sbs; ++s) {
    for (int i = 0; i < k; ++i) sol.per_sbs[s].push_back({i + 1, fixed_rate_bps});
  }
  return sol;
}

PlacementSolution place_mhr(const std::vector<catalog::Video>& library,
                            const catalog::ClusterConfig& cfg, const catalog::OpLadder& ladder,
                            double fixed_rate_bps, const qoe::QoeTable& table,
                            double quantum_rate_bps) {
  ladder.index_of(fixed_rate_bps);
  cfg.validate();
  if (library.empty()) throw std::invalid_argument("place_mhr: empty library");

  // Per-SBS count first: round-robin then fills every station exactly to
  // its own budget, so no station overflows.
  const double copy_bytes = fixed_rate_bps * library.front().duration_s / 8.0;
  const std::int64_t per_sbs = static_cast<std::int64_t>(
      std::floor(cfg.cache_bytes_per_sbs / copy_bytes));
  const int k = std::min<std::int64_t>(per_sbs * cfg.n_sbs,
                                       static_cast<std::int64_t>(library.size()));
  PlacementSolution sol =
      make_fixed_rate_solution(library, cfg, ladder, fixed_rate_bps, 1, k, table, quantum_rate_bps);
  for (int i = 0; i < k; ++i) {
    sol.per_sbs[i % cfg.n_sbs].push_back({i + 1, fixed_rate_bps});
  }
  return sol;
}

PlacementSolution place_baseline(const BaselineSpec& spec,
                                 const std::vector<catalog::Video>& library,
                                 const catalog::ClusterConfig& cfg,
                                 const catalog::OpLadder& ladder, const qoe::QoeTable& table,
                                 double quantum_rate_bps) {
  switch (spec.kind) {
    case BaselineKind::kDmp:
      return place_dmp(library, cfg, ladder, spec.fixed_rate_bps, table, quantum_rate_bps);
    case BaselineKind::kMhr:
      return place_mhr(library, cfg, ladder, spec.fixed_rate_bps, table, quantum_rate_bps);
  }
  throw std::invalid_argument("place_baseline: unknown baseline kind");
}

}  // namespace svcache::strategies
