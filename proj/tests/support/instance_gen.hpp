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

#ifndef SVCACHE_TESTS_INSTANCE_GEN_HPP
#define SVCACHE_TESTS_INSTANCE_GEN_HPP

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "svcache/placement.hpp"

namespace svcache::test {

struct KnapsackInstance {
  std::vector<catalog::Video> library;
  placement::EfficientStateSet cs;
  std::int64_t capacity = 0;
};

// Random small MCKP instance: nonincreasing random popularities summing to
// 1, a synthetic efficient set with strictly increasing (cost, qoe), and a
// random capacity. Caching-state fields are placeholders; only (qoe, cost)
// drive the solvers.
inline KnapsackInstance random_instance(std::mt19937_64& gen, int max_m, int max_v,
                                        std::int64_t max_capacity) {
  std::uniform_int_distribution<int> m_dist(1, max_m);
  std::uniform_int_distribution<int> v_dist(0, max_v);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  KnapsackInstance inst;
  const int m = m_dist(gen);
  std::vector<double> pops(m);
  for (double& p : pops) p = unit(gen) + 1e-6;
  std::sort(pops.begin(), pops.end(), std::greater<>());
  double mass = 0.0;
  for (double p : pops) mass += p;
  for (int i = 0; i < m; ++i) inst.library.push_back({i + 1, pops[i] / mass, 3600.0});

  inst.cs.mbs_qoe = 0.5 + 2.0 * unit(gen);
  const int v = v_dist(gen);
  std::set<std::int64_t> costs;
  std::uniform_int_distribution<std::int64_t> cost_dist(1, std::max<std::int64_t>(1, max_capacity));
  while (static_cast<int>(costs.size()) < v) costs.insert(cost_dist(gen));
  std::vector<double> qoes(v);
  for (double& q : qoes) q = inst.cs.mbs_qoe + (5.0 - inst.cs.mbs_qoe) * (unit(gen) + 1e-9);
  std::sort(qoes.begin(), qoes.end());
  int j = 0;
  for (std::int64_t cost : costs) {
    inst.cs.states.push_back(
        {catalog::CachingState{1 + j % 3, 1e5 * (j + 1)}, qoes[j], cost});
    ++j;
  }
  inst.capacity = std::uniform_int_distribution<std::int64_t>(0, max_capacity)(gen);
  return inst;
}

}  // namespace svcache::test

#endif  // SVCACHE_TESTS_INSTANCE_GEN_HPP
