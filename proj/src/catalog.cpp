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

#include "svcache/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace svcache::catalog {

namespace {

constexpr double kRateMatchTol = 1e-9;   // relative, for ladder lookups
constexpr double kMultipleTol = 1e-6;    // relative, for quantum multiples

bool nearly_equal(double a, double b, double rel_tol) {
  return std::fabs(a - b) <= rel_tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

OpLadder OpLadder::suggested_rates() {
  OpLadder ladder;
  for (double mbps : {0.1, 0.3, 0.6, 1.0, 1.2, 2.0, 2.8, 4.8, 7.2, 10.4}) {
    ladder.rates_bps.push_back(mbps * 1e6);
  }
  return ladder;
}

void OpLadder::validate() const {
  if (rates_bps.empty()) throw std::invalid_argument("OpLadder: empty rate list");
  double prev = 0.0;
  for (double r : rates_bps) {
    if (!(r > prev)) {
      throw std::invalid_argument("OpLadder: rates must be positive and strictly increasing");
    }
    prev = r;
  }
  const double base = rates_bps.front();
  for (double r : rates_bps) {
    const double ratio = r / base;
    if (std::fabs(ratio - std::llround(ratio)) > kMultipleTol * std::max(1.0, ratio)) {
      throw std::invalid_argument("OpLadder: every rate must be an integer multiple of the base rate");
    }
  }
}

int OpLadder::index_of(double rate_bps) const {
  for (int i = 0; i < size(); ++i) {
    if (nearly_equal(rates_bps[i], rate_bps, kRateMatchTol)) return i;
  }
  throw std::invalid_argument("OpLadder: rate " + std::to_string(rate_bps) + " bps not on the ladder");
}

int OpLadder::highest_at_most(double x) const {
  int best = -1;
  for (int i = 0; i < size(); ++i) {
    if (rates_bps[i] <= x) best = i;
  }
  return best;
}

void ClusterConfig::validate() const {
  if (n_sbs < 1) throw std::invalid_argument("ClusterConfig: n_sbs must be >= 1");
  if (cache_bytes_per_sbs < 0.0) {
    throw std::invalid_argument("ClusterConfig: cache_bytes_per_sbs must be >= 0");
  }
  sbs.validate();
  mbs.validate();
}

std::vector<double> zipf_popularity(int m, double s) {
  if (m < 1) throw std::invalid_argument("zipf_popularity: m must be >= 1");
  if (s < 0.0) throw std::invalid_argument("zipf_popularity: s must be >= 0");
  std::vector<double> p(m);
  double norm = 0.0;
  for (int i = 1; i <= m; ++i) norm += std::pow(static_cast<double>(i), -s);
  for (int i = 1; i <= m; ++i) p[i - 1] = std::pow(static_cast<double>(i), -s) / norm;
  return p;
}

std::vector<Video> make_library(int m, double zipf_s, double duration_s) {
  if (duration_s <= 0.0) throw std::invalid_argument("make_library: duration must be > 0");
  const std::vector<double> p = zipf_popularity(m, zipf_s);
  std::vector<Video> library(m);
  for (int i = 0; i < m; ++i) library[i] = Video{i + 1, p[i], duration_s};
  return library;
}

std::vector<Video> split_to_common_duration(const std::vector<Video>& in, double duration_s) {
  if (duration_s <= 0.0) throw std::invalid_argument("split_to_common_duration: duration must be > 0");
  std::vector<Video> parts;
  for (const Video& v : in) {
    if (v.duration_s <= 0.0) throw std::invalid_argument("video duration must be > 0");
    if (v.popularity < 0.0) throw std::invalid_argument("video popularity must be >= 0");
    const int n_parts = static_cast<int>(std::ceil(v.duration_s / duration_s - kMultipleTol));
    for (int k = 0; k < std::max(1, n_parts); ++k) {
      parts.push_back(Video{0, v.popularity, duration_s});
    }
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const Video& a, const Video& b) { return a.popularity > b.popularity; });
  double mass = 0.0;
  for (const Video& v : parts) mass += v.popularity;
  if (!(mass > 0.0)) throw std::invalid_argument("library popularity mass must be positive");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    parts[i].id = static_cast<int>(i) + 1;
    parts[i].popularity /= mass;
  }
  return parts;
}

void validate_library(const std::vector<Video>& library) {
  if (library.empty()) throw std::invalid_argument("library must not be empty");
  double mass = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  int expect_id = 1;
  for (const Video& v : library) {
    if (v.id != expect_id++) throw std::invalid_argument("library ids must be 1..M in rank order");
    if (v.popularity > prev) throw std::invalid_argument("library popularities must be nonincreasing");
    if (v.duration_s <= 0.0) throw std::invalid_argument("video duration must be > 0");
    prev = v.popularity;
    mass += v.popularity;
  }
  if (std::fabs(mass - 1.0) > 1e-9) {
    throw std::invalid_argument("library popularities must sum to 1 within 1e-9");
  }
}

std::int64_t rate_units(double rate_bps, double quantum_rate_bps, bool strict) {
  if (!(quantum_rate_bps > 0.0)) throw std::invalid_argument("rate_units: quantum must be > 0");
  if (rate_bps < 0.0) throw std::invalid_argument("rate_units: rate must be >= 0");
  const double ratio = rate_bps / quantum_rate_bps;
  const double snapped = static_cast<double>(std::llround(ratio));
  if (std::fabs(ratio - snapped) <= kMultipleTol * std::max(1.0, ratio)) {
    return std::llround(ratio);
  }
  if (strict) {
    throw std::invalid_argument("rate_units: rate is not an integer multiple of the quantum rate");
  }
  return static_cast<std::int64_t>(std::ceil(ratio));
}

std::int64_t normalized_cost(const CachingState& state, const OpLadder& ladder,
                             double quantum_rate_bps) {
  if (state.n < 1) throw std::invalid_argument("normalized_cost: diversity must be >= 1");
  ladder.index_of(state.rate_bps);  // reject off-ladder rates
  const bool strict = nearly_equal(quantum_rate_bps, ladder.base_rate(), kRateMatchTol);
  return static_cast<std::int64_t>(state.n) * rate_units(state.rate_bps, quantum_rate_bps, strict);
}

double unit_bytes(double quantum_rate_bps, double duration_s) {
  return quantum_rate_bps * duration_s / 8.0;
}

std::int64_t cluster_capacity_units(const ClusterConfig& cfg, double quantum_rate_bps,
                                    double duration_s) {
  const double per_unit = unit_bytes(quantum_rate_bps, duration_s);
  if (!(per_unit > 0.0)) throw std::invalid_argument("cluster_capacity_units: bad unit size");
  const double per_sbs = std::floor(cfg.cache_bytes_per_sbs / per_unit);
  return static_cast<std::int64_t>(cfg.n_sbs) * static_cast<std::int64_t>(per_sbs);
}

}  // namespace svcache::catalog
