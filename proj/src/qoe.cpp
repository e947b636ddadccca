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

#include "svcache/qoe.hpp"

#include <cmath>
#include <stdexcept>

namespace svcache::qoe {

void QoeModel::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("QoeModel: alpha and beta must be > 0");
  }
}

double normalized_quality(double rate_bps, double r_max_bps, const QoeModel& model) {
  if (!(rate_bps > 0.0)) throw std::invalid_argument("normalized_quality: rate must be > 0");
  if (rate_bps > r_max_bps) {
    throw std::invalid_argument("normalized_quality: rate must not exceed r_max");
  }
  return std::exp(-model.alpha * std::pow(rate_bps / r_max_bps, -model.beta) + model.alpha);
}

double mos(double rate_bps, double r_max_bps, const QoeModel& model) {
  return 1.0 + 4.0 * normalized_quality(rate_bps, r_max_bps, model);
}

double expected_qoe(const catalog::CachingState& state, const catalog::OpLadder& ladder,
                    const channel::ChannelParams& params, const QoeModel& model) {
  if (state.n < 1) throw std::invalid_argument("expected_qoe: diversity must be >= 1");
  const int top = ladder.index_of(state.rate_bps);
  const double r_max = ladder.top_rate();

  // Mass above the cached rate's threshold plays the cached rate; the
  // interval [R^l, R^(l+1)) plays OP l; mass below R^1 scores 0.
  double value = (1.0 - channel::outage_probability(state.n, state.rate_bps, params)) *
                 mos(state.rate_bps, r_max, model);
  for (int l = 0; l < top; ++l) {
    const double p_low = channel::outage_probability(state.n, ladder.rates_bps[l], params);
    const double p_high = channel::outage_probability(state.n, ladder.rates_bps[l + 1], params);
    value += (p_high - p_low) * mos(ladder.rates_bps[l], r_max, model);
  }
  return value;
}

double mbs_qoe(const catalog::OpLadder& ladder, const channel::ChannelParams& mbs,
               const QoeModel& model) {
  return expected_qoe(catalog::CachingState{1, ladder.top_rate()}, ladder, mbs, model);
}

QoeTable::QoeTable(const catalog::ClusterConfig& cfg, const catalog::OpLadder& ladder,
                   const QoeModel& model)
    : ladder_(ladder), n_sbs_(cfg.n_sbs) {
  cfg.validate();
  ladder_.validate();
  model.validate();
  mbs_qoe_ = mbs_qoe(ladder_, cfg.mbs, model);
  table_.resize(static_cast<std::size_t>(n_sbs_) * ladder_.size());
  for (int n = 1; n <= n_sbs_; ++n) {
    for (int l = 0; l < ladder_.size(); ++l) {
      table_[static_cast<std::size_t>(n - 1) * ladder_.size() + l] =
          expected_qoe(catalog::CachingState{n, ladder_.rates_bps[l]}, ladder_, cfg.sbs, model);
    }
  }
}

double QoeTable::q(int n, int ladder_index) const {
  if (n < 1 || n > n_sbs_ || ladder_index < 0 || ladder_index >= ladder_.size()) {
    throw std::out_of_range("QoeTable: (n, ladder_index) outside the evaluated grid");
  }
  return table_[static_cast<std::size_t>(n - 1) * ladder_.size() + ladder_index];
}

double QoeTable::q(const catalog::CachingState& state) const {
  return q(state.n, ladder_.index_of(state.rate_bps));
}

}  // namespace svcache::qoe
