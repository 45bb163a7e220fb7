// core/src/partition.cc

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
#include <limits>
#include <map>

#include "sre/metrics.h"

namespace sre {

namespace {

constexpr std::array<std::string_view, kNumDimensions> kDimensionNames = {
    "gender", "source_match", "language_match", "phone_match"};

signed char match_value(Match m, Dimension d) {
  switch (m) {
    case Match::kYes: return 0;
    case Match::kNo: return 1;
    case Match::kNotApplicable:
      // Phone match is undefined for non-targets and video sources; those
      // trials belong with the non-matching ones.
      if (d == Dimension::kPhoneMatch) return 1;
      break;
  }
  throw std::invalid_argument("trial has no value (NA) for partition dimension " +
                              std::string(to_string(d)));
}

}  // namespace

std::string_view to_string(Dimension d) {
  return kDimensionNames[static_cast<std::size_t>(d)];
}

std::optional<Dimension> parse_dimension(std::string_view s) {
  for (std::size_t i = 0; i < kNumDimensions; ++i)
    if (kDimensionNames[i] == s) return static_cast<Dimension>(i);
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> CellKey::coordinates() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < kNumDimensions; ++i) {
    if (values[i] < 0) continue;
    std::string value;
    if (static_cast<Dimension>(i) == Dimension::kGender)
      value = values[i] == 0 ? "male" : "female";
    else
      value = values[i] == 0 ? "Y" : "N";
    out.emplace_back(std::string(kDimensionNames[i]), std::move(value));
  }
  return out;
}

std::string CellKey::label() const {
  std::string out;
  for (const auto &[name, value] : coordinates()) {
    if (!out.empty()) out += ',';
    out += name + "=" + value;
  }
  return out.empty() ? "all" : out;
}

Exclusion PartitionSchema::multi_segment_enrollment() {
  return {"num_enroll=3",
          [](const TrialMetadata &m) { return m.num_enroll_segments == 3; }};
}

PartitionSchema PartitionSchema::for_track(Track track) {
  PartitionSchema schema;
  schema.track = track;
  switch (track) {
    case Track::kAudio:
      schema.dimensions = {Dimension::kGender, Dimension::kSourceMatch,
                           Dimension::kLanguageMatch, Dimension::kPhoneMatch};
      break;
    case Track::kAudioVisual:
      schema.dimensions = {Dimension::kGender, Dimension::kLanguageMatch};
      break;
    case Track::kVisual:
      schema.dimensions = {Dimension::kGender};
      break;
  }
  schema.exclusions.push_back(multi_segment_enrollment());
  return schema;
}

bool PartitionSchema::excluded(const TrialMetadata &meta) const {
  return std::any_of(exclusions.begin(), exclusions.end(),
                     [&](const Exclusion &e) { return e.excludes(meta); });
}

bool PartitionSchema::has(Dimension d) const {
  return std::find(dimensions.begin(), dimensions.end(), d) != dimensions.end();
}

bool PartitionSchema::drop_exclusion(std::string_view name) {
  auto it = std::find_if(exclusions.begin(), exclusions.end(),
                         [&](const Exclusion &e) { return e.name == name; });
  if (it == exclusions.end()) return false;
  exclusions.erase(it);
  return true;
}

std::optional<CellKey> cell_of(const TrialMetadata &meta,
                               const PartitionSchema &schema) {
  if (schema.excluded(meta)) return std::nullopt;
  CellKey key;
  for (Dimension d : schema.dimensions) {
    signed char v = 0;
    switch (d) {
      case Dimension::kGender: v = meta.gender == Gender::kMale ? 0 : 1; break;
      case Dimension::kSourceMatch: v = match_value(meta.source_match, d); break;
      case Dimension::kLanguageMatch: v = match_value(meta.language_match, d); break;
      case Dimension::kPhoneMatch: v = match_value(meta.phone_match, d); break;
    }
    key.values[static_cast<std::size_t>(d)] = v;
  }
  return key;
}

CellKey pool_of(const CellKey &cell) {
  CellKey pool = cell;
  pool.values[static_cast<std::size_t>(Dimension::kPhoneMatch)] = -1;
  return pool;
}

PartitionedScores::PartitionedScores(std::span<const ScoredTrial> trials,
                                     const PartitionSchema &schema) {
  std::map<CellKey, std::vector<double>> targets;
  std::map<CellKey, std::vector<double>> nontargets;
  for (const ScoredTrial &t : trials) {
    auto cell = cell_of(t.meta, schema);
    if (!cell) {
      ++num_excluded_;
      continue;
    }
    if (t.meta.is_target())
      targets[*cell].push_back(t.llr);
    else
      nontargets[pool_of(*cell)].push_back(t.llr);
  }

  std::map<CellKey, std::size_t> pool_index;
  for (auto &[key, scores] : targets) {
    CellKey pool_key = pool_of(key);
    auto nt = nontargets.find(pool_key);
    if (nt == nontargets.end()) {
      skipped_.push_back({key, scores.size(), 0, "empty non-target pool"});
      continue;
    }
    auto [it, inserted] = pool_index.emplace(pool_key, pools_.size());
    if (inserted) pools_.push_back({pool_key, nt->second, 0});
    ++pools_[it->second].multiplicity;
    std::sort(scores.begin(), scores.end());
    cells_.push_back({key, it->second, std::move(scores)});
  }
  for (auto &pool : pools_) std::sort(pool.scores.begin(), pool.scores.end());
  for (const auto &[key, scores] : nontargets)
    if (!pool_index.contains(key))
      skipped_.push_back({key, 0, scores.size(), "no target trials"});
}

ErrorRates PartitionedScores::rates_from_counts(
    std::span<const std::size_t> misses,
    std::span<const std::size_t> false_alarms) const {
  // Sums run in cell order so equal counts give equal doubles.
  double miss_sum = 0.0;
  double fa_sum = 0.0;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const TargetCell &cell = cells_[c];
    miss_sum += static_cast<double>(misses[c]) /
                static_cast<double>(cell.scores.size());
    fa_sum += static_cast<double>(false_alarms[cell.pool]) /
              static_cast<double>(pools_[cell.pool].scores.size());
  }
  double n = static_cast<double>(cells_.size());
  return {miss_sum / n, fa_sum / n};
}

ErrorRates PartitionedScores::rates_at(double theta) const {
  std::vector<std::size_t> misses(cells_.size());
  std::vector<std::size_t> false_alarms(pools_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto &s = cells_[c].scores;
    misses[c] = static_cast<std::size_t>(
        std::upper_bound(s.begin(), s.end(), theta) - s.begin());
  }
  for (std::size_t p = 0; p < pools_.size(); ++p) {
    const auto &s = pools_[p].scores;
    false_alarms[p] = static_cast<std::size_t>(
        s.end() - std::upper_bound(s.begin(), s.end(), theta));
  }
  return rates_from_counts(misses, false_alarms);
}

std::vector<SweepPoint> PartitionedScores::sweep() const {
  struct Event {
    double score;
    bool target;
    std::size_t index;  // cell for targets, pool for non-targets
  };
  std::vector<Event> events;
  std::vector<std::size_t> misses(cells_.size(), 0);
  std::vector<std::size_t> false_alarms(pools_.size(), 0);
  for (std::size_t c = 0; c < cells_.size(); ++c)
    for (double s : cells_[c].scores) events.push_back({s, true, c});
  for (std::size_t p = 0; p < pools_.size(); ++p) {
    false_alarms[p] = pools_[p].scores.size();
    for (double s : pools_[p].scores) events.push_back({s, false, p});
  }
  std::sort(events.begin(), events.end(),
            [](const Event &a, const Event &b) { return a.score < b.score; });

  std::vector<SweepPoint> points;
  const double inf = std::numeric_limits<double>::infinity();
  auto emit = [&](double theta) {
    ErrorRates r = rates_from_counts(misses, false_alarms);
    points.push_back({theta, r.p_miss, r.p_fa});
  };
  emit(-inf);
  std::size_t i = 0;
  while (i < events.size()) {
    double value = events[i].score;
    for (; i < events.size() && events[i].score == value; ++i) {
      if (events[i].target)
        ++misses[events[i].index];
      else
        --false_alarms[events[i].index];
    }
    emit(i < events.size() ? value + (events[i].score - value) / 2 : inf);
  }
  return points;
}

}  // namespace sre
