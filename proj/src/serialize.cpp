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

#include "svcache/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace svcache::serialize {

namespace {

using nlohmann::json;

// Fixed formatting keeps CSV output byte-stable across runs.
std::string fmt(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

}  // namespace

std::string solution_to_json(const placement::PlacementSolution& solution) {
  json doc;
  doc["m_hat"] = solution.m_hat;
  doc["objective"] = solution.objective;
  doc["mbs_qoe"] = solution.mbs_qoe;
  doc["used_units"] = solution.used_units;
  doc["capacity_units"] = solution.capacity_units;
  doc["assignments"] = json::array();
  for (std::size_t i = 0; i < solution.assignments.size(); ++i) {
    if (!solution.assignments[i]) continue;
    const placement::VideoAssignment& a = *solution.assignments[i];
    doc["assignments"].push_back({{"id", static_cast<int>(i) + 1},
                                  {"n", a.state.n},
                                  {"r_mbps", a.state.rate_bps / 1e6},
                                  {"cost_units", a.cost_units},
                                  {"qoe", a.qoe}});
  }
  doc["per_sbs"] = json::array();
  for (const auto& contents : solution.per_sbs) {
    json station = json::array();
    for (const placement::SbsEntry& entry : contents) {
      station.push_back({{"id", entry.video_id}, {"r_mbps", entry.rate_bps / 1e6}});
    }
    doc["per_sbs"].push_back(std::move(station));
  }
  doc["demotions"] = json::array();
  for (const placement::Demotion& d : solution.demotions) {
    doc["demotions"].push_back({{"id", d.video_id},
                                {"n_before", d.n_before},
                                {"r_mbps_before", d.rate_before / 1e6},
                                {"n_after", d.n_after},
                                {"r_mbps_after", d.rate_after / 1e6},
                                {"dropped", d.dropped}});
  }
  return doc.dump(2) + "\n";
}

placement::PlacementSolution solution_from_json(const std::string& text, int library_size,
                                                const catalog::OpLadder& ladder,
                                                const qoe::QoeTable& table,
                                                double quantum_rate_bps) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("solution is not valid JSON: ") + e.what());
  }
  placement::PlacementSolution solution;
  solution.assignments.resize(library_size);
  solution.mbs_qoe = table.mbs();
  try {
    for (const json& a : doc.at("assignments")) {
      const int id = a.at("id").get<int>();
      if (id < 1 || id > library_size) {
        throw std::invalid_argument("solution assignment id " + std::to_string(id) +
                                    " outside library of size " + std::to_string(library_size));
      }
      const int n = a.at("n").get<int>();
      const double rate = ladder.rates_bps[ladder.index_of(a.at("r_mbps").get<double>() * 1e6)];
      const catalog::CachingState state{n, rate};
      solution.assignments[id - 1] = placement::VideoAssignment{
          state, table.q(state), catalog::normalized_cost(state, ladder, quantum_rate_bps)};
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("solution schema mismatch: ") + e.what());
  }
  for (std::size_t i = 0; i < solution.assignments.size(); ++i) {
    if (solution.assignments[i]) {
      solution.m_hat = static_cast<int>(i) + 1;
      solution.used_units += solution.assignments[i]->cost_units;
    }
  }
  return solution;
}

std::string report_to_json(const sim::SimReport& report, std::uint64_t seed) {
  json doc;
  doc["trials"] = report.trials;
  doc["seed"] = seed;
  doc["avg_qoe"] = report.avg_qoe;
  doc["avg_qoe_se"] = report.avg_qoe_se;
  doc["hit_ratio"] = report.hit_ratio;
  doc["hit_ratio_se"] = report.hit_ratio_se;
  doc["stall_prob"] = report.stall_prob;
  if (!report.per_rank_qoe.empty()) doc["per_rank_qoe"] = report.per_rank_qoe;
  return doc.dump(2) + "\n";
}

std::string solution_csv(const placement::PlacementSolution& solution,
                         const std::vector<catalog::Video>& library) {
  std::ostringstream out;
  out << "rank,popularity,n,r_mbps,qoe\n";
  for (std::size_t i = 0; i < solution.assignments.size(); ++i) {
    if (!solution.assignments[i]) continue;
    const placement::VideoAssignment& a = *solution.assignments[i];
    out << (i + 1) << ',' << fmt(library[i].popularity) << ',' << a.state.n << ','
        << fmt(a.state.rate_bps / 1e6) << ',' << fmt(a.qoe) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "axis,value,strategy,avg_qoe,avg_qoe_se,hit_ratio,hit_ratio_se,stall_prob\n";
  for (const SweepRow& row : rows) {
    out << row.axis << ',' << fmt(row.value) << ',' << row.strategy << ','
        << fmt(row.report.avg_qoe) << ',' << fmt(row.report.avg_qoe_se) << ','
        << fmt(row.report.hit_ratio) << ',' << fmt(row.report.hit_ratio_se) << ','
        << fmt(row.report.stall_prob) << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << contents;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace svcache::serialize
