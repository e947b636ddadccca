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

#ifndef SVCACHE_CONFIG_HPP
#define SVCACHE_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "svcache/catalog.hpp"
#include "svcache/qoe.hpp"

namespace svcache::config {

// Bad or inconsistent user input (CLI maps this to exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VideoSpec {
  int id = 0;
  double popularity = 0.0;
  double duration_s = 0.0;
};

struct LibrarySpec {
  int m = 10000;
  double zipf_s = 0.8;
  double duration_s = 3600.0;
  std::vector<double> ladder_mbps;           // empty = suggested ladder
  std::optional<std::vector<VideoSpec>> videos;  // overrides (m, zipf_s)
};

struct ClusterSpec {
  int n_sbs = 3;
  double cache_bytes = 2e12;
  double sbs_snr_db = 10.0;
  double sbs_bandwidth_hz = 5e6;
  double mbs_snr_db = 3.0;
  double mbs_bandwidth_hz = 2e6;
};

struct SolverSpec {
  int quantum_mult = 1;   // cache quantum = quantum_mult * base ladder rate
  bool early_stop = false;
};

struct SimSpec {
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ExperimentConfig {
  LibrarySpec library;
  ClusterSpec cluster;
  qoe::QoeModel qoe;
  SolverSpec solver;
  SimSpec sim;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Everything derived from a config that experiments consume.
struct Experiment {
  std::vector<catalog::Video> library;
  catalog::OpLadder ladder;
  catalog::ClusterConfig cluster;
  qoe::QoeModel model;
  double quantum_rate_bps = 0.0;
  std::int64_t capacity_units = 0;
  SolverSpec solver;
  SimSpec sim;

  double duration_s() const { return library.front().duration_s; }
};

Experiment build_experiment(const ExperimentConfig& cfg);

}  // namespace svcache::config

#endif  // SVCACHE_CONFIG_HPP
