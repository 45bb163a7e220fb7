// sre/metrics.h

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

// Partition-equalized detection cost.
//
// Trials are split into cells by metadata (gender, source match, language
// match, phone-number match, depending on the track). Error rates are the
// average of per-cell rates, so every cell counts the same regardless of its
// size. Non-targets never share a phone number with the enrollment, so
// non-target pools are formed on the remaining dimensions and each target
// cell is paired with the pool that matches it on those.
//
// All rates are computed from integer per-cell counts with a fixed cell
// order. Two code paths that see the same counts therefore produce the same
// doubles, which is what lets the threshold sweep, the direct evaluation at
// a threshold and the DET curve agree bit for bit.

#ifndef SRE_METRICS_H_
#define SRE_METRICS_H_

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sre/trial_data.h"

namespace sre {

/// Evaluation-level failure (nothing left to score, too many degenerate
/// bootstrap replicates). Input problems use std::invalid_argument.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// beta = (c_fa / c_miss) * (1 - p_target) / p_target. Throws
/// std::invalid_argument outside c_miss, c_fa > 0, 0 < p_target < 1.
double beta(double c_miss, double c_fa, double p_target);

class OperatingPoint {
 public:
  OperatingPoint(double c_miss, double c_fa, double p_target);

  double c_miss() const { return c_miss_; }
  double c_fa() const { return c_fa_; }
  double p_target() const { return p_target_; }
  double beta() const { return beta_; }
  /// Bayes decision threshold, ln(beta).
  double threshold() const { return threshold_; }

  bool operator==(const OperatingPoint &) const = default;

 private:
  double c_miss_;
  double c_fa_;
  double p_target_;
  double beta_;
  double threshold_;
};

/// (1, 1, 0.01) and (1, 1, 0.05).
std::vector<OperatingPoint> default_operating_points();

/// Parses "c_miss,c_fa,p_target;c_miss,c_fa,p_target;...".
std::vector<OperatingPoint> parse_operating_points(std::string_view text);

/// p_miss + beta * p_fa. No clipping.
double c_norm(double p_miss, double p_fa, const OperatingPoint &point);

// ---------------------------------------------------------------------------
// Partitioning.

enum class Dimension { kGender = 0, kSourceMatch, kLanguageMatch, kPhoneMatch };
inline constexpr std::size_t kNumDimensions = 4;

std::string_view to_string(Dimension d);
std::optional<Dimension> parse_dimension(std::string_view s);

/// Coordinates of a cell. Unused dimensions hold -1; gender is 0 (male) or
/// 1 (female); match dimensions are 0 (Y) or 1 (N).
struct CellKey {
  std::array<signed char, kNumDimensions> values{-1, -1, -1, -1};

  auto operator<=>(const CellKey &) const = default;
  bool operator==(const CellKey &) const = default;

  signed char at(Dimension d) const { return values[static_cast<int>(d)]; }
  /// "gender=female,source_match=Y,..." over the dimensions in use; "all"
  /// when no dimension is used.
  std::string label() const;
  /// (dimension name, value name) pairs over the dimensions in use.
  std::vector<std::pair<std::string, std::string>> coordinates() const;
};

struct Exclusion {
  std::string name;
  std::function<bool(const TrialMetadata &)> excludes;
};

struct PartitionSchema {
  Track track = Track::kAudio;
  std::vector<Dimension> dimensions;
  std::vector<Exclusion> exclusions;

  /// audio: gender x source x language x phone; audio-visual: gender x
  /// language; visual: gender. 3-segment enrollment is excluded.
  static PartitionSchema for_track(Track track);
  /// Predicate used by for_track(); removed by --include-3seg.
  static Exclusion multi_segment_enrollment();

  bool excluded(const TrialMetadata &meta) const;
  bool has(Dimension d) const;
  /// Removes the exclusion with this name; returns whether one was found.
  bool drop_exclusion(std::string_view name);
};

/// One scored trial stripped of its identity. Multisets of these (with
/// repeats) are what the bootstrap feeds back into the metric.
struct ScoredTrial {
  double llr = 0.0;
  TrialMetadata meta;
};

/// Joins scores onto the key. Throws std::invalid_argument if a key trial
/// has no score; scores for trials outside the key are ignored.
std::vector<ScoredTrial> join_scores(const ScoreSet &scores, const TrialKey &key);

struct TargetCell {
  CellKey key;
  std::size_t pool = 0;        // index into PartitionedScores::pools()
  std::vector<double> scores;  // sorted ascending
};

struct NontargetPool {
  CellKey key;
  std::vector<double> scores;    // sorted ascending
  std::size_t multiplicity = 0;  // number of target cells paired with it
};

struct SkippedCell {
  CellKey key;
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;
  std::string reason;
};

struct ErrorRates {
  double p_miss = 0.0;
  double p_fa = 0.0;
};

struct SweepPoint {
  double threshold = 0.0;  // -inf / +inf for the two sentinels
  double p_miss = 0.0;
  double p_fa = 0.0;
};

/// Maps a trial to its cell; nullopt when the schema excludes it.
std::optional<CellKey> cell_of(const TrialMetadata &meta,
                               const PartitionSchema &schema);
/// The non-target pool a target cell is paired with.
CellKey pool_of(const CellKey &cell);

/// Trials grouped by cell, keeping only cells that take part in the metric:
/// a target cell needs at least one target and a non-empty paired pool; a
/// pool needs at least one participating target cell.
class PartitionedScores {
 public:
  PartitionedScores(std::span<const ScoredTrial> trials,
                    const PartitionSchema &schema);

  const std::vector<TargetCell> &cells() const { return cells_; }
  const std::vector<NontargetPool> &pools() const { return pools_; }
  const std::vector<SkippedCell> &skipped() const { return skipped_; }
  std::size_t num_excluded() const { return num_excluded_; }
  bool empty() const { return cells_.empty(); }

  /// Equalized rates with the rule accept iff llr > theta (a score equal to
  /// theta is a miss).
  ErrorRates rates_at(double theta) const;

  /// One point below every score, one between each pair of consecutive
  /// distinct scores (at the midpoint) and one above every score.
  std::vector<SweepPoint> sweep() const;

  /// Equalized rates from per-cell miss counts and per-pool false-alarm
  /// counts.
  ErrorRates rates_from_counts(std::span<const std::size_t> misses,
                               std::span<const std::size_t> false_alarms) const;

 private:
  std::vector<TargetCell> cells_;
  std::vector<NontargetPool> pools_;
  std::vector<SkippedCell> skipped_;
  std::size_t num_excluded_ = 0;
};

/// Per-trial weights: 1/(C n_c) for a target in cell c, and m_p/(C N_p) for
/// a non-target in pool p paired with m_p of the C target cells. Each class
/// sums to 1. Excluded and non-participating trials get no weight.
struct EqualizationWeights {
  PartitionSchema schema;
  std::map<TrialId, double> weight;

  std::optional<double> of(const TrialId &id) const;
};

/// Throws EvaluationError when no cell participates.
EqualizationWeights equalization_weights(const TrialKey &key,
                                         const PartitionSchema &schema);

/// Throws std::invalid_argument when a key trial lacks a score or a weight.
ErrorRates error_rates(const ScoreSet &scores, const TrialKey &key,
                       double theta, const EqualizationWeights &weights);

// ---------------------------------------------------------------------------
// Cost.

struct PointCost {
  OperatingPoint point;
  double actual_c_norm = 0.0;  // at threshold()
  double p_miss = 0.0;         // at threshold()
  double p_fa = 0.0;           // at threshold()
  double min_c_norm = 0.0;
  double min_threshold = 0.0;  // lowest sweep threshold attaining min_c_norm
  double min_p_miss = 0.0;
  double min_p_fa = 0.0;
};

struct CellCost {
  CellKey key;
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;  // size of the paired pool
  std::vector<double> p_miss;   // per operating point, at its threshold
  std::vector<double> p_fa;
  std::vector<double> c_norm;
  double actual_c_primary = 0.0;  // mean of c_norm over points
};

struct CostReport {
  std::vector<OperatingPoint> points;
  std::vector<PointCost> per_point;
  std::vector<CellCost> per_cell;
  std::vector<SkippedCell> skipped;
  std::size_t num_excluded = 0;
  double actual_c_primary = 0.0;
  double min_c_primary = 0.0;
};

/// Actual and minimum C_primary over already-partitioned trials. Throws
/// EvaluationError when no cell participates.
CostReport evaluate(const PartitionedScores &data,
                    std::span<const OperatingPoint> points);

/// Only the actual cost; skips the sweep. Used by the bootstrap.
double actual_cost(const PartitionedScores &data,
                   std::span<const OperatingPoint> points);
/// Only the minimum cost.
double min_cost(const PartitionedScores &data,
                std::span<const OperatingPoint> points);

/// Both report the full CostReport (actual and minimum).
CostReport actual_c_primary(const ScoreSet &scores, const TrialKey &key,
                            const PartitionSchema &schema,
                            std::span<const OperatingPoint> points);
CostReport min_c_primary(const ScoreSet &scores, const TrialKey &key,
                         const PartitionSchema &schema,
                         std::span<const OperatingPoint> points);

}  // namespace sre

#endif  // SRE_METRICS_H_
