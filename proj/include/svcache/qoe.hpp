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

#ifndef SVCACHE_QOE_HPP
#define SVCACHE_QOE_HPP

#include <vector>

#include "svcache/catalog.hpp"
#include "svcache/channel.hpp"

namespace svcache::qoe {

// Rate-quality model parameters of scalable video.
struct QoeModel {
  double alpha = 0.16;
  double beta = 0.66;

  void validate() const;
};

// exp(-alpha * (r/r_max)^-beta + alpha), in (0, 1], equal to 1 at r_max.
double normalized_quality(double rate_bps, double r_max_bps, const QoeModel& model);

// MOS on the 1..5 scale: 1 + 4 * normalized_quality.
double mos(double rate_bps, double r_max_bps, const QoeModel& model);

// Expected MOS of a video cached as `state`: the user decodes the highest
// operation point at or below the cached rate that the instantaneous
// channel sustains; rates below the base OP score 0 (playback failure).
double expected_qoe(const catalog::CachingState& state, const catalog::OpLadder& ladder,
                    const channel::ChannelParams& params, const QoeModel& model);

// Expected MOS under MBS delivery: diversity 1, full ladder available.
// Constant across videos since the ladder is shared.
double mbs_qoe(const catalog::OpLadder& ladder, const channel::ChannelParams& mbs,
               const QoeModel& model);

// q(n, r) for every n in 1..N and every ladder rate, evaluated once and
// reused by the solver; the per-cell evaluation is the hot inner value of
// the placement DP.
class QoeTable {
 public:
  QoeTable(const catalog::ClusterConfig& cfg, const catalog::OpLadder& ladder,
           const QoeModel& model);

  double q(int n, int ladder_index) const;
  double q(const catalog::CachingState& state) const;
  double mbs() const { return mbs_qoe_; }
  int max_diversity() const { return n_sbs_; }
  const catalog::OpLadder& ladder() const { return ladder_; }

 private:
  catalog::OpLadder ladder_;
  int n_sbs_;
  double mbs_qoe_;
  std::vector<double> table_;  // row n-1, column ladder index
};

}  // namespace svcache::qoe

#endif  // SVCACHE_QOE_HPP
