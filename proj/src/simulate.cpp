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

#include "svcache/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "svcache/channel.hpp"

namespace svcache::sim {

namespace {

constexpr std::int64_t kChunkTrials = 8192;

struct ChunkStats {
  double mos_sum = 0.0;
  double mos_sq_sum = 0.0;
  std::int64_t hits = 0;
  std::int64_t stalls = 0;
};

}  // namespace

RequestSimulator::RequestSimulator(const placement::PlacementSolution& solution,
                                   const std::vector<catalog::Video>& library,
                                   const catalog::OpLadder& ladder,
                                   const catalog::ClusterConfig& cfg, const qoe::QoeModel& model)
    : solution_(solution), ladder_(ladder), cfg_(cfg) {
  if (solution.assignments.size() != library.size()) {
    throw std::invalid_argument("RequestSimulator: assignment/library size mismatch");
  }
  popularity_cdf_.reserve(library.size());
  double cum = 0.0;
  for (const catalog::Video& v : library) {
    cum += v.popularity;
    popularity_cdf_.push_back(cum);
  }
  op_mos_.reserve(ladder.size());
  for (double r : ladder.rates_bps) op_mos_.push_back(qoe::mos(r, ladder.top_rate(), model));
}

RequestOutcome RequestSimulator::simulate(Rng& rng) const {
  const double u = rng.next_double();
  const auto it = std::upper_bound(popularity_cdf_.begin(), popularity_cdf_.end(), u);
  const int video = std::min<int>(static_cast<int>(it - popularity_cdf_.begin()),
                                  static_cast<int>(popularity_cdf_.size()) - 1);

  const auto& assignment = solution_.assignments[video];
  const bool cached = assignment.has_value();
  const int diversity = cached ? assignment->state.n : 1;
  const channel::ChannelParams& tier = cached ? cfg_.sbs : cfg_.mbs;
  const double cap_rate = cached ? assignment->state.rate_bps : ladder_.top_rate();

  const double snr = channel::sample_max_snr(diversity, tier, rng);
  const double rate = channel::shannon_rate(snr, tier);
  const int decodable = ladder_.highest_at_most(std::min(rate, cap_rate));

  RequestOutcome out;
  out.video_rank = video + 1;
  out.hit = cached;
  out.stall = decodable < 0;
  out.mos = decodable < 0 ? 0.0 : op_mos_[decodable];
  return out;
}

RequestOutcome simulate_request(const placement::PlacementSolution& solution,
                                const std::vector<catalog::Video>& library,
                                const catalog::OpLadder& ladder,
                                const catalog::ClusterConfig& cfg, const qoe::QoeModel& model,
                                Rng& rng) {
  return RequestSimulator(solution, library, ladder, cfg, model).simulate(rng);
}

SimReport estimate(const placement::PlacementSolution& solution,
                   const std::vector<catalog::Video>& library, const catalog::OpLadder& ladder,
                   const catalog::ClusterConfig& cfg, const qoe::QoeModel& model,
                   std::int64_t trials, std::uint64_t seed, int n_threads, bool per_rank) {
  if (trials < 1) throw std::invalid_argument("estimate: trials must be >= 1");
  const RequestSimulator simulator(solution, library, ladder, cfg, model);

  const std::int64_t n_chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<ChunkStats> chunks(n_chunks);
  std::vector<double> rank_sum;
  std::vector<std::int64_t> rank_count;
  if (per_rank) {
    n_threads = 1;
    rank_sum.assign(library.size(), 0.0);
    rank_count.assign(library.size(), 0);
  }

  auto run_chunk = [&](std::int64_t c) {
    ChunkStats stats;
    const std::int64_t begin = c * kChunkTrials;
    const std::int64_t end = std::min(trials, begin + kChunkTrials);
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng(substream_seed(seed, static_cast<std::uint64_t>(t)));
      const RequestOutcome out = simulator.simulate(rng);
      stats.mos_sum += out.mos;
      stats.mos_sq_sum += out.mos * out.mos;
      stats.hits += out.hit ? 1 : 0;
      stats.stalls += out.stall ? 1 : 0;
      if (per_rank) {
        rank_sum[out.video_rank - 1] += out.mos;
        rank_count[out.video_rank - 1] += 1;
      }
    }
    chunks[c] = stats;
  };

  n_threads = std::max(1, n_threads);
  if (n_threads == 1 || n_chunks == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) {
      workers.emplace_back([&] {
        for (std::int64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
          run_chunk(c);
        }
      });
    }
    for (auto& worker : workers) worker.join();
  }

  // Two-level deterministic reduction: per-chunk sums combined in chunk
  // order, independent of which thread ran which chunk.
  double mos_sum = 0.0;
  double mos_sq_sum = 0.0;
  std::int64_t hits = 0;
  std::int64_t stalls = 0;
  for (const ChunkStats& stats : chunks) {
    mos_sum += stats.mos_sum;
    mos_sq_sum += stats.mos_sq_sum;
    hits += stats.hits;
    stalls += stats.stalls;
  }

  const double n = static_cast<double>(trials);
  SimReport report;
  report.trials = trials;
  report.avg_qoe = mos_sum / n;
  report.hit_ratio = static_cast<double>(hits) / n;
  report.stall_prob = static_cast<double>(stalls) / n;
  if (trials > 1) {
    const double mos_var =
        std::max(0.0, (mos_sq_sum - n * report.avg_qoe * report.avg_qoe) / (n - 1.0));
    report.avg_qoe_se = std::sqrt(mos_var / n);
    const double hit_var =
        std::max(0.0, report.hit_ratio * (1.0 - report.hit_ratio) * n / (n - 1.0));
    report.hit_ratio_se = std::sqrt(hit_var / n);
  }
  if (per_rank) {
    report.per_rank_qoe.resize(library.size(), 0.0);
    for (std::size_t i = 0; i < library.size(); ++i) {
      if (rank_count[i] > 0) report.per_rank_qoe[i] = rank_sum[i] / rank_count[i];
    }
  }
  return report;
}

double hit_ratio_analytic(const placement::PlacementSolution& solution,
                          const std::vector<catalog::Video>& library) {
  if (solution.assignments.size() != library.size()) {
    throw std::invalid_argument("hit_ratio_analytic: assignment/library size mismatch");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < library.size(); ++i) {
    if (solution.assignments[i]) mass += library[i].popularity;
  }
  return mass;
}

double stall_prob_analytic(const placement::PlacementSolution& solution,
                           const std::vector<catalog::Video>& library,
                           const catalog::OpLadder& ladder, const catalog::ClusterConfig& cfg) {
  if (solution.assignments.size() != library.size()) {
    throw std::invalid_argument("stall_prob_analytic: assignment/library size mismatch");
  }
  const double base = ladder.base_rate();
  double prob = 0.0;
  for (std::size_t i = 0; i < library.size(); ++i) {
    const auto& assignment = solution.assignments[i];
    if (assignment) {
      prob += library[i].popularity * channel::outage_probability(assignment->state.n, base, cfg.sbs);
    } else {
      prob += library[i].popularity * channel::outage_probability(1, base, cfg.mbs);
    }
  }
  return prob;
}

}  // namespace svcache::sim
