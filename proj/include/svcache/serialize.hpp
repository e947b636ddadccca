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

#ifndef SVCACHE_SERIALIZE_HPP
#define SVCACHE_SERIALIZE_HPP

#include <string>
#include <vector>

#include "svcache/placement.hpp"
#include "svcache/qoe.hpp"
#include "svcache/simulate.hpp"

namespace svcache::serialize {

// Solution document: m_hat, objective, assignments[{id, n, r_mbps,
// cost_units, qoe}], per_sbs[[{id, r_mbps}]], demotions[].
std::string solution_to_json(const placement::PlacementSolution& solution);

// Rebuilds a solution against the experiment's library/ladder; rates are
// snapped back onto the ladder. Throws std::invalid_argument on schema
// mismatch.
placement::PlacementSolution solution_from_json(const std::string& text, int library_size,
                                                const catalog::OpLadder& ladder,
                                                const qoe::QoeTable& table,
                                                double quantum_rate_bps);

std::string report_to_json(const sim::SimReport& report, std::uint64_t seed);

// Per-cached-video CSV: rank,popularity,n,r_mbps,qoe
std::string solution_csv(const placement::PlacementSolution& solution,
                         const std::vector<catalog::Video>& library);

struct SweepRow {
  std::string axis;
  double value = 0.0;
  std::string strategy;
  sim::SimReport report;
};

// axis,value,strategy,avg_qoe,avg_qoe_se,hit_ratio,hit_ratio_se,stall_prob
std::string sweep_csv(const std::vector<SweepRow>& rows);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace svcache::serialize

#endif  // SVCACHE_SERIALIZE_HPP
