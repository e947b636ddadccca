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

#include "svcache/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace svcache::channel {

namespace {

// Small-integer power by repeated multiplication. Keeps the identity
// ipow(x, n) == product of n copies of x bit-for-bit, which the order
// statistics below rely on.
double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

double ChannelParams::mean_snr_linear() const { return db_to_linear(avg_snr_db); }

void ChannelParams::validate() const {
  if (!(bandwidth_hz > 0.0)) {
    throw std::invalid_argument("ChannelParams: bandwidth_hz must be > 0");
  }
  if (!std::isfinite(avg_snr_db)) {
    throw std::invalid_argument("ChannelParams: avg_snr_db must be finite");
  }
}

double db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

double snr_cdf_max(double x, int n, const ChannelParams& params) {
  if (n < 1) throw std::invalid_argument("snr_cdf_max: n must be >= 1");
  if (x < 0.0) throw std::invalid_argument("snr_cdf_max: x must be >= 0");
  const double mean = params.mean_snr_linear();
  return ipow(-std::expm1(-x / mean), n);
}

double outage_probability(int n, double rate_bps, const ChannelParams& params) {
  if (n < 1) throw std::invalid_argument("outage_probability: n must be >= 1");
  if (rate_bps < 0.0) throw std::invalid_argument("outage_probability: rate must be >= 0");
  const double threshold = std::exp2(rate_bps / params.bandwidth_hz) - 1.0;
  return ipow(-std::expm1(-threshold / params.mean_snr_linear()), n);
}

double shannon_rate(double snr_linear, const ChannelParams& params) {
  if (snr_linear < 0.0) throw std::invalid_argument("shannon_rate: snr must be >= 0");
  return params.bandwidth_hz * std::log2(1.0 + snr_linear);
}

double sample_max_snr(int n, const ChannelParams& params, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_max_snr: n must be >= 1");
  const double mean = params.mean_snr_linear();
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double draw = rng.exponential(mean);
    if (draw > best) best = draw;
  }
  return best;
}

}  // namespace svcache::channel
