// core/src/bootstrap.cc

// Copyright 2026  The sre-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "sre/det.h"
#include "sre/random.h"

namespace sre {

std::string_view to_string(CostKind k) {
  return k == CostKind::kActual ? "actual" : "min";
}

std::string_view to_string(ResampleUnit u) {
  return u == ResampleUnit::kModels ? "models" : "models+segments";
}

double nearest_rank_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  double n = static_cast<double>(sorted.size());
  // The small slack keeps q*n that should be an integer (0.025 * 1000) from
  // rounding up past it.
  double rank = std::ceil(q * n - 1e-9);
  std::size_t idx = rank < 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
  return sorted[std::min(idx, sorted.size() - 1)];
}

namespace {

double cost_of(const PartitionedScores &data, const BootstrapOptions &options) {
  return options.metric == CostKind::kActual ? actual_cost(data, options.points)
                                             : min_cost(data, options.points);
}

// Trials grouped by model id, models in sorted order.
std::vector<std::vector<ScoredTrial>> group_by_model(const ScoreSet &scores,
                                                     const TrialKey &key) {
  std::vector<ScoredTrial> joined = join_scores(scores, key);
  std::vector<std::vector<ScoredTrial>> groups;
  auto records = key.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i == 0 || records[i].id.model_id != records[i - 1].id.model_id)
      groups.emplace_back();
    groups.back().push_back(joined[i]);
  }
  return groups;
}

}  // namespace

std::vector<double> bootstrap_replicates(const ScoreSet &scores,
                                         const TrialKey &key,
                                         const PartitionSchema &schema,
                                         const BootstrapOptions &options,
                                         std::size_t *discarded) {
  if (options.n_replicates == 0)
    throw std::invalid_argument("bootstrap needs at least one replicate");
  if (!(options.level > 0.0 && options.level < 1.0))
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  if (key.empty()) throw std::invalid_argument("bootstrap over an empty key");
  const auto groups = group_by_model(scores, key);
  const std::size_t n_models = groups.size();

  std::vector<std::optional<double>> costs(options.n_replicates);
  auto run_replicate = [&](std::size_t r) {
    Rng rng = make_rng(options.seed, r);
    std::uniform_int_distribution<std::size_t> pick_model(0, n_models - 1);
    std::vector<ScoredTrial> sample;
    for (std::size_t m = 0; m < n_models; ++m) {
      const auto &group = groups[pick_model(rng)];
      if (options.unit == ResampleUnit::kModels) {
        sample.insert(sample.end(), group.begin(), group.end());
      } else {
        std::uniform_int_distribution<std::size_t> pick_trial(0, group.size() - 1);
        for (std::size_t t = 0; t < group.size(); ++t)
          sample.push_back(group[pick_trial(rng)]);
      }
    }
    PartitionedScores data(sample, schema);
    if (!data.empty()) costs[r] = cost_of(data, options);
  };

  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, options.n_replicates));
  if (threads <= 1) {
    for (std::size_t r = 0; r < options.n_replicates; ++r) run_replicate(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < options.n_replicates; r = next++)
          run_replicate(r);
      });
  }

  std::vector<double> kept;
  kept.reserve(costs.size());
  for (const auto &c : costs)
    if (c) kept.push_back(*c);
  std::sort(kept.begin(), kept.end());
  if (discarded) *discarded = costs.size() - kept.size();
  return kept;
}

ConfidenceInterval bootstrap_ci(const ScoreSet &scores, const TrialKey &key,
                                const PartitionSchema &schema,
                                const BootstrapOptions &options) {
  std::vector<ScoredTrial> all = join_scores(scores, key);
  PartitionedScores full(all, schema);
  ConfidenceInterval ci;
  ci.point_estimate = cost_of(full, options);
  ci.level = options.level;
  ci.n_replicates = options.n_replicates;
  ci.seed = options.seed;
  ci.metric = options.metric;
  ci.unit = options.unit;

  std::vector<double> costs =
      bootstrap_replicates(scores, key, schema, options, &ci.n_discarded);
  if (static_cast<double>(ci.n_discarded) >
          options.max_discard_fraction * static_cast<double>(options.n_replicates) ||
      costs.empty())
    throw EvaluationError("bootstrap: " + std::to_string(ci.n_discarded) + " of " +
                          std::to_string(options.n_replicates) +
                          " replicates had no participating cell");
  double tail = (1.0 - options.level) / 2.0;
  ci.lower = nearest_rank_quantile(costs, tail);
  ci.upper = nearest_rank_quantile(costs, 1.0 - tail);
  return ci;
}

}  // namespace sre
