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

#include "svcache/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace svcache::config {

namespace {

using nlohmann::json;

// Reads obj[key] into out when present, with a config-flavored error on a
// type mismatch.
template <typename T>
void read_field(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  ExperimentConfig cfg;
  if (root.contains("library")) {
    const json& lib = root.at("library");
    read_field(lib, "m", cfg.library.m);
    read_field(lib, "zipf_s", cfg.library.zipf_s);
    read_field(lib, "duration_s", cfg.library.duration_s);
    read_field(lib, "ladder_mbps", cfg.library.ladder_mbps);
    if (lib.contains("videos")) {
      std::vector<VideoSpec> videos;
      try {
        for (const json& v : lib.at("videos")) {
          VideoSpec spec;
          spec.id = v.at("id").get<int>();
          spec.popularity = v.at("popularity").get<double>();
          spec.duration_s = v.value("duration_s", cfg.library.duration_s);
          videos.push_back(spec);
        }
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config field 'library.videos': ") + e.what());
      }
      cfg.library.videos = std::move(videos);
    }
  }
  if (root.contains("cluster")) {
    const json& cluster = root.at("cluster");
    read_field(cluster, "n_sbs", cfg.cluster.n_sbs);
    read_field(cluster, "cache_bytes", cfg.cluster.cache_bytes);
    read_field(cluster, "sbs_snr_db", cfg.cluster.sbs_snr_db);
    read_field(cluster, "sbs_bandwidth_hz", cfg.cluster.sbs_bandwidth_hz);
    read_field(cluster, "mbs_snr_db", cfg.cluster.mbs_snr_db);
    read_field(cluster, "mbs_bandwidth_hz", cfg.cluster.mbs_bandwidth_hz);
  }
  if (root.contains("qoe")) {
    read_field(root.at("qoe"), "alpha", cfg.qoe.alpha);
    read_field(root.at("qoe"), "beta", cfg.qoe.beta);
  }
  if (root.contains("solver")) {
    read_field(root.at("solver"), "quantum_mult", cfg.solver.quantum_mult);
    read_field(root.at("solver"), "early_stop", cfg.solver.early_stop);
  }
  if (root.contains("sim")) {
    read_field(root.at("sim"), "trials", cfg.sim.trials);
    read_field(root.at("sim"), "seed", cfg.sim.seed);
    read_field(root.at("sim"), "threads", cfg.sim.threads);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

Experiment build_experiment(const ExperimentConfig& cfg) {
  Experiment exp;
  try {
    if (cfg.library.ladder_mbps.empty()) {
      exp.ladder = catalog::OpLadder::suggested_rates();
    } else {
      for (double mbps : cfg.library.ladder_mbps) exp.ladder.rates_bps.push_back(mbps * 1e6);
    }
    exp.ladder.validate();

    if (cfg.library.videos) {
      std::vector<catalog::Video> raw;
      for (const VideoSpec& v : *cfg.library.videos) {
        raw.push_back(catalog::Video{v.id, v.popularity, v.duration_s});
      }
      exp.library = catalog::split_to_common_duration(raw, cfg.library.duration_s);
    } else {
      exp.library = catalog::make_library(cfg.library.m, cfg.library.zipf_s,
                                          cfg.library.duration_s);
    }
    catalog::validate_library(exp.library);

    exp.cluster.n_sbs = cfg.cluster.n_sbs;
    exp.cluster.cache_bytes_per_sbs = cfg.cluster.cache_bytes;
    exp.cluster.sbs = {cfg.cluster.sbs_snr_db, cfg.cluster.sbs_bandwidth_hz};
    exp.cluster.mbs = {cfg.cluster.mbs_snr_db, cfg.cluster.mbs_bandwidth_hz};
    exp.cluster.validate();

    exp.model = cfg.qoe;
    exp.model.validate();

    if (cfg.solver.quantum_mult < 1) throw ConfigError("solver.quantum_mult must be >= 1");
    if (cfg.sim.trials < 1) throw ConfigError("sim.trials must be >= 1");
    if (cfg.sim.threads < 1) throw ConfigError("sim.threads must be >= 1");
    exp.solver = cfg.solver;
    exp.sim = cfg.sim;
    exp.quantum_rate_bps = exp.ladder.base_rate() * cfg.solver.quantum_mult;
    exp.capacity_units =
        catalog::cluster_capacity_units(exp.cluster, exp.quantum_rate_bps, exp.duration_s());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return exp;
}

}  // namespace svcache::config
