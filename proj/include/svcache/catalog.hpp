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

#ifndef SVCACHE_CATALOG_HPP
#define SVCACHE_CATALOG_HPP

#include <cstdint>
#include <vector>

#include "svcache/channel.hpp"

namespace svcache::catalog {

// Operation-point ladder shared by all videos: strictly increasing
// bit-rates, each an integer multiple of the base rate.
struct OpLadder {
  std::vector<double> rates_bps;

  // 1080p..144p suggested rates: 0.1, 0.3, 0.6, 1.0, 1.2, 2.0, 2.8, 4.8,
  // 7.2, 10.4 Mbps.
  static OpLadder suggested_rates();

  void validate() const;
  int size() const { return static_cast<int>(rates_bps.size()); }
  double base_rate() const { return rates_bps.front(); }
  double top_rate() const { return rates_bps.back(); }

  // Index of a ladder rate (tolerant match); throws if absent.
  int index_of(double rate_bps) const;
  // Largest index l with rates_bps[l] <= x, or -1 if x < base rate.
  int highest_at_most(double x) const;
};

struct Video {
  int id = 0;            // 1-based popularity rank
  double popularity = 0.0;
  double duration_s = 0.0;
};

struct ClusterConfig {
  int n_sbs = 1;
  double cache_bytes_per_sbs = 0.0;
  channel::ChannelParams sbs;
  channel::ChannelParams mbs;

  void validate() const;
};

// (diversity, cached bit-rate): the video is stored in n distinct SBSs,
// each holding layers up to rate_bps.
struct CachingState {
  int n = 0;
  double rate_bps = 0.0;

  friend bool operator==(const CachingState&, const CachingState&) = default;
};

// p_i = i^-s / sum_j j^-s.
std::vector<double> zipf_popularity(int m, double s);

// m videos with Zipf(s) popularity, all of the given duration.
std::vector<Video> make_library(int m, double zipf_s, double duration_s);

// Normalizes a heterogeneous library to a common duration: every video is
// split into ceil(d/T) parts of duration T carrying the source video's
// popularity. Output is renormalized to sum to 1, sorted nonincreasing,
// and renumbered by rank.
std::vector<Video> split_to_common_duration(const std::vector<Video>& in, double duration_s);

void validate_library(const std::vector<Video>& library);

// --- normalized cache-unit accounting ----------------------------------
// One unit stores one copy at the quantum rate for the video duration.
// The default quantum is the ladder base rate; coarser quanta round
// per-copy costs up so a quantized plan never overfills real storage.

// Copy cost of `rate` in quantum units (>= 1 for positive rates). With
// strict=true a rate that is not an integer multiple of the quantum is
// rejected instead of rounded up.
std::int64_t rate_units(double rate_bps, double quantum_rate_bps, bool strict);

std::int64_t normalized_cost(const CachingState& state, const OpLadder& ladder,
                             double quantum_rate_bps);

// Bytes occupied by one cache unit.
double unit_bytes(double quantum_rate_bps, double duration_s);

// N * floor(C / unit_bytes): total cluster capacity on the unit axis.
std::int64_t cluster_capacity_units(const ClusterConfig& cfg, double quantum_rate_bps,
                                    double duration_s);

}  // namespace svcache::catalog

#endif  // SVCACHE_CATALOG_HPP
