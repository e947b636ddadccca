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
// Test-only reference solver: the plain O(M * capacity) full-table DP with
// explicit per-cell choice records. Memory-hungry but structurally
// trivial; used to cross-check the production solver's checkpointed
// backtracking at sizes the brute-force oracle cannot reach.

#ifndef SVCACHE_TESTS_REFERENCE_DP_HPP
#define SVCACHE_TESTS_REFERENCE_DP_HPP

#include <vector>

#include "svcache/placement.hpp"

namespace svcache::test {

inline placement::PlacementSolution full_table_reference(
    const std::vector<catalog::Video>& library, const placement::EfficientStateSet& cs,
    std::int64_t capacity) {
  const int m_total = static_cast<int>(library.size());
  const std::int64_t row_len = capacity + 1;
  std::vector<std::vector<double>> value(m_total + 1, std::vector<double>(row_len, 0.0));
  std::vector<std::vector<int>> choice(m_total + 1, std::vector<int>(row_len, -1));

  for (int m = 1; m <= m_total; ++m) {
    const double p = library[m - 1].popularity;
    for (std::int64_t v = 0; v <= capacity; ++v) {
      double best = value[m - 1][v] + p * cs.mbs_qoe;
      int best_choice = -1;
      for (int j = 0; j < static_cast<int>(cs.states.size()); ++j) {
        const std::int64_t c = cs.states[j].cost;
        if (c > v) continue;
        const double cand = value[m - 1][v - c] + p * cs.states[j].qoe;
        if (cand > best) {
          best = cand;
          best_choice = j;
        }
      }
      value[m][v] = best;
      choice[m][v] = best_choice;
    }
  }

  placement::PlacementSolution sol;
  sol.assignments.resize(m_total);
  sol.mbs_qoe = cs.mbs_qoe;
  sol.capacity_units = capacity;
  std::int64_t v = capacity;
  for (int m = m_total; m >= 1; --m) {
    const int j = choice[m][v];
    if (j >= 0) {
      const placement::EfficientState& es = cs.states[j];
      sol.assignments[m - 1] = placement::VideoAssignment{es.state, es.qoe, es.cost};
      sol.used_units += es.cost;
      v -= es.cost;
    }
  }
  for (int m = 0; m < m_total; ++m) {
    if (sol.assignments[m]) sol.m_hat = m + 1;
  }
  sol.objective = placement::objective(sol.assignments, library, cs.mbs_qoe);
  return sol;
}

}  // namespace svcache::test

#endif  // SVCACHE_TESTS_REFERENCE_DP_HPP
