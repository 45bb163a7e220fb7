// core/src/metrics.cc

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

#include "sre/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sre/text_io.h"

namespace sre {

double beta(double c_miss, double c_fa, double p_target) {
  if (!(c_miss > 0.0) || !std::isfinite(c_miss))
    throw std::invalid_argument("c_miss must be positive");
  if (!(c_fa > 0.0) || !std::isfinite(c_fa))
    throw std::invalid_argument("c_fa must be positive");
  if (!(p_target > 0.0 && p_target < 1.0))
    throw std::invalid_argument("p_target must lie in (0, 1)");
  // Extended precision keeps the result correctly rounded, so (1, 1, 0.05)
  // gives exactly 19.
  long double num = static_cast<long double>(c_fa) * (1.0L - p_target);
  long double den = static_cast<long double>(c_miss) * p_target;
  return static_cast<double>(num / den);
}

OperatingPoint::OperatingPoint(double c_miss, double c_fa, double p_target)
    : c_miss_(c_miss),
      c_fa_(c_fa),
      p_target_(p_target),
      beta_(sre::beta(c_miss, c_fa, p_target)),
      threshold_(std::log(beta_)) {}

std::vector<OperatingPoint> default_operating_points() {
  return {OperatingPoint(1.0, 1.0, 0.01), OperatingPoint(1.0, 1.0, 0.05)};
}

std::vector<OperatingPoint> parse_operating_points(std::string_view text) {
  std::vector<OperatingPoint> points;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    std::array<double, 3> v{};
    std::size_t field_start = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      std::size_t comma = item.find(',', field_start);
      if ((k < 2) == (comma == std::string_view::npos))
        throw std::invalid_argument("operating point '" + std::string(item) +
                                    "' must be c_miss,c_fa,p_target");
      std::string_view field = item.substr(
          field_start, k < 2 ? comma - field_start : std::string_view::npos);
      auto value = parse_double(field);
      if (!value)
        throw std::invalid_argument("operating point field '" +
                                    std::string(field) + "' is not a number");
      v[k] = *value;
      field_start = comma + 1;
    }
    points.emplace_back(v[0], v[1], v[2]);
    start = end + 1;
  }
  if (points.empty()) throw std::invalid_argument("no operating points given");
  return points;
}

double c_norm(double p_miss, double p_fa, const OperatingPoint &point) {
  return p_miss + point.beta() * p_fa;
}

std::vector<ScoredTrial> join_scores(const ScoreSet &scores,
                                     const TrialKey &key) {
  std::vector<ScoredTrial> out;
  out.reserve(key.size());
  auto entries = scores.entries();
  std::size_t j = 0;
  for (const TrialRecord &r : key.records()) {
    while (j < entries.size() && entries[j].id < r.id) ++j;
    if (j == entries.size() || entries[j].id != r.id)
      throw std::invalid_argument("no score for trial (" + r.id.model_id +
                                  ", " + r.id.segment_id + ")");
    out.push_back({entries[j].llr, r.meta});
  }
  return out;
}

std::optional<double> EqualizationWeights::of(const TrialId &id) const {
  auto it = weight.find(id);
  if (it == weight.end()) return std::nullopt;
  return it->second;
}

EqualizationWeights equalization_weights(const TrialKey &key,
                                         const PartitionSchema &schema) {
  std::vector<ScoredTrial> trials;
  trials.reserve(key.size());
  for (const TrialRecord &r : key.records()) trials.push_back({0.0, r.meta});
  PartitionedScores parts(trials, schema);
  if (parts.empty())
    throw EvaluationError("no partition cell has both targets and non-targets");

  std::map<CellKey, double> target_weight;
  std::map<CellKey, double> nontarget_weight;
  double n_cells = static_cast<double>(parts.cells().size());
  for (const TargetCell &cell : parts.cells())
    target_weight[cell.key] =
        1.0 / (n_cells * static_cast<double>(cell.scores.size()));
  for (const NontargetPool &pool : parts.pools())
    nontarget_weight[pool.key] =
        static_cast<double>(pool.multiplicity) /
        (n_cells * static_cast<double>(pool.scores.size()));

  EqualizationWeights w;
  w.schema = schema;
  for (const TrialRecord &r : key.records()) {
    auto cell = cell_of(r.meta, schema);
    if (!cell) continue;
    if (r.meta.is_target()) {
      auto it = target_weight.find(*cell);
      if (it != target_weight.end()) w.weight.emplace(r.id, it->second);
    } else {
      auto it = nontarget_weight.find(pool_of(*cell));
      if (it != nontarget_weight.end()) w.weight.emplace(r.id, it->second);
    }
  }
  return w;
}

ErrorRates error_rates(const ScoreSet &scores, const TrialKey &key,
                       double theta, const EqualizationWeights &weights) {
  std::vector<ScoredTrial> trials = join_scores(scores, key);
  PartitionedScores parts(trials, weights.schema);
  std::size_t participating = 0;
  for (const auto &c : parts.cells()) participating += c.scores.size();
  for (const auto &p : parts.pools()) participating += p.scores.size();
  std::size_t weighted = 0;
  for (const TrialRecord &r : key.records())
    if (weights.weight.contains(r.id)) ++weighted;
  if (weighted != weights.weight.size())
    throw std::invalid_argument("equalization weights name trials outside the key");
  if (weighted != participating)
    throw std::invalid_argument("key trial without equalization weight");
  return parts.rates_at(theta);
}

// ---------------------------------------------------------------------------

namespace {

void require_points(std::span<const OperatingPoint> points) {
  if (points.empty()) throw std::invalid_argument("no operating points");
}

void require_cells(const PartitionedScores &data) {
  if (data.empty())
    throw EvaluationError("no partition cell has both targets and non-targets");
}

// Lowest-threshold minimum of c_norm over the sweep.
const SweepPoint *argmin_cost(const std::vector<SweepPoint> &sweep,
                              const OperatingPoint &point, double *cost) {
  const SweepPoint *best = nullptr;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const SweepPoint &p : sweep) {
    double c = c_norm(p.p_miss, p.p_fa, point);
    if (c < best_cost) {
      best_cost = c;
      best = &p;
    }
  }
  *cost = best_cost;
  return best;
}

}  // namespace

double actual_cost(const PartitionedScores &data,
                   std::span<const OperatingPoint> points) {
  require_points(points);
  require_cells(data);
  double total = 0.0;
  for (const OperatingPoint &op : points) {
    ErrorRates r = data.rates_at(op.threshold());
    total += c_norm(r.p_miss, r.p_fa, op);
  }
  return total / static_cast<double>(points.size());
}

double min_cost(const PartitionedScores &data,
                std::span<const OperatingPoint> points) {
  require_points(points);
  require_cells(data);
  std::vector<SweepPoint> sweep = data.sweep();
  double total = 0.0;
  for (const OperatingPoint &op : points) {
    double c = 0.0;
    argmin_cost(sweep, op, &c);
    total += c;
  }
  return total / static_cast<double>(points.size());
}

CostReport evaluate(const PartitionedScores &data,
                    std::span<const OperatingPoint> points) {
  require_points(points);
  require_cells(data);
  CostReport report;
  report.points.assign(points.begin(), points.end());
  report.skipped = data.skipped();
  report.num_excluded = data.num_excluded();

  // The pooled actual cost at ln(beta) equals the mean of the per-cell costs
  // (both averages are linear). It is computed from the same counts as the
  // sweep so that min <= actual holds exactly in floating point.
  std::vector<SweepPoint> sweep = data.sweep();
  double actual_total = 0.0;
  double min_total = 0.0;
  for (const OperatingPoint &op : points) {
    ErrorRates r = data.rates_at(op.threshold());
    double actual = c_norm(r.p_miss, r.p_fa, op);
    double best = 0.0;
    const SweepPoint *at = argmin_cost(sweep, op, &best);
    report.per_point.push_back(PointCost{op, actual, r.p_miss, r.p_fa, best,
                                         at->threshold, at->p_miss, at->p_fa});
    actual_total += actual;
    min_total += best;
  }
  double n_points = static_cast<double>(points.size());
  report.actual_c_primary = actual_total / n_points;
  report.min_c_primary = min_total / n_points;

  for (const TargetCell &cell : data.cells()) {
    const auto &pool = data.pools()[cell.pool].scores;
    CellCost cc;
    cc.key = cell.key;
    cc.n_target = cell.scores.size();
    cc.n_nontarget = pool.size();
    double sum = 0.0;
    for (const OperatingPoint &op : points) {
      double theta = op.threshold();
      auto miss = std::upper_bound(cell.scores.begin(), cell.scores.end(), theta) -
                  cell.scores.begin();
      auto fa = pool.end() - std::upper_bound(pool.begin(), pool.end(), theta);
      double p_miss = static_cast<double>(miss) / static_cast<double>(cc.n_target);
      double p_fa = static_cast<double>(fa) / static_cast<double>(cc.n_nontarget);
      double c = c_norm(p_miss, p_fa, op);
      cc.p_miss.push_back(p_miss);
      cc.p_fa.push_back(p_fa);
      cc.c_norm.push_back(c);
      sum += c;
    }
    cc.actual_c_primary = sum / n_points;
    report.per_cell.push_back(std::move(cc));
  }
  return report;
}

CostReport actual_c_primary(const ScoreSet &scores, const TrialKey &key,
                            const PartitionSchema &schema,
                            std::span<const OperatingPoint> points) {
  std::vector<ScoredTrial> trials = join_scores(scores, key);
  return evaluate(PartitionedScores(trials, schema), points);
}

CostReport min_c_primary(const ScoreSet &scores, const TrialKey &key,
                         const PartitionSchema &schema,
                         std::span<const OperatingPoint> points) {
  return actual_c_primary(scores, key, schema, points);
}

}  // namespace sre
