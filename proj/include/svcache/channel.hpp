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

#ifndef SVCACHE_CHANNEL_HPP
#define SVCACHE_CHANNEL_HPP

#include "svcache/random.hpp"

namespace svcache::channel {

// Average SNR and per-user bandwidth of one transmitter class. Two
// instances describe a deployment: the SBS profile and the MBS profile.
struct ChannelParams {
  double avg_snr_db = 0.0;
  double bandwidth_hz = 0.0;

  double mean_snr_linear() const;
  void validate() const;  // throws std::invalid_argument
};

double db_to_linear(double snr_db);

// CDF of the best of n i.i.d. Rayleigh-faded links at linear SNR x:
// (1 - exp(-x / mean))^n.
double snr_cdf_max(double x, int n, const ChannelParams& params);

// Probability that the instantaneous Shannon rate of the best of n links
// falls below rate_bps under quasi-static fading.
double outage_probability(int n, double rate_bps, const ChannelParams& params);

// W * log2(1 + x) in bits/s.
double shannon_rate(double snr_linear, const ChannelParams& params);

// Max of n independent exponential draws with the channel's mean SNR.
double sample_max_snr(int n, const ChannelParams& params, Rng& rng);

}  // namespace svcache::channel

#endif  // SVCACHE_CHANNEL_HPP
