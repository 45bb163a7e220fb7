// sre/trial_data.h

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

#ifndef SRE_TRIAL_DATA_H_
#define SRE_TRIAL_DATA_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sre {

/// Raised by every file reader. Carries the 1-based line number of the
/// offending line (0 when the problem is not tied to a line, e.g. an empty
/// file) and, when applicable, the name of the column that failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::string field,
             const std::string &message);

  const std::string &source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string &field() const { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
};

enum class Label { kTarget, kNontarget };
enum class Gender { kMale, kFemale };
enum class Match { kYes, kNo, kNotApplicable };
enum class Track { kAudio, kVisual, kAudioVisual };

std::string_view to_string(Label v);
std::string_view to_string(Gender v);
std::string_view to_string(Match v);
std::string_view to_string(Track v);

std::optional<Label> parse_label(std::string_view s);
std::optional<Gender> parse_gender(std::string_view s);
std::optional<Match> parse_match(std::string_view s);
std::optional<Track> parse_track(std::string_view s);

/// (enrollment model, test segment) pair. Tokens are opaque, non-empty and
/// free of tabs and newlines.
struct TrialId {
  std::string model_id;
  std::string segment_id;

  auto operator<=>(const TrialId &) const = default;
  bool operator==(const TrialId &) const = default;
};

/// True iff `token` may be used as a model, segment or speaker identifier.
bool is_valid_token(std::string_view token);

/// Everything about a trial except its identity; this is what the metric
/// partitions on.
struct TrialMetadata {
  Label label = Label::kNontarget;
  Gender gender = Gender::kFemale;
  Match source_match = Match::kYes;
  Match language_match = Match::kYes;
  Match phone_match = Match::kNotApplicable;
  int num_enroll_segments = 1;
  Track track = Track::kAudio;

  bool is_target() const { return label == Label::kTarget; }
  bool operator==(const TrialMetadata &) const = default;
};

struct TrialRecord {
  TrialId id;
  TrialMetadata meta;

  bool operator==(const TrialRecord &) const = default;
};

/// Checks the per-record invariants (phone match only on targets, 3-segment
/// enrollment only on audio, enrollment count in {1, 3}). Returns an error
/// description naming the offending field, or nullopt.
struct RecordProblem {
  std::string field;
  std::string message;
};
std::optional<RecordProblem> check_record(const TrialRecord &record);

/// The answer key. Records are kept sorted by TrialId, so two keys built
/// from permutations of the same rows compare equal.
class TrialKey {
 public:
  TrialKey() = default;
  /// Throws std::invalid_argument on duplicate ids, records from another
  /// track, or records violating check_record().
  TrialKey(Track track, std::vector<TrialRecord> records);

  Track track() const { return track_; }
  std::span<const TrialRecord> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t num_targets() const;
  std::size_t num_nontargets() const { return size() - num_targets(); }

  /// Binary search; nullptr when absent.
  const TrialRecord *find(const TrialId &id) const;

  /// Distinct model ids in sorted order.
  std::vector<std::string> model_ids() const;

  bool operator==(const TrialKey &) const = default;

 private:
  Track track_ = Track::kAudio;
  std::vector<TrialRecord> records_;
};

struct ScoreEntry {
  TrialId id;
  double llr = 0.0;

  bool operator==(const ScoreEntry &) const = default;
};

/// One system's natural-log likelihood ratios, sorted by TrialId.
class ScoreSet {
 public:
  ScoreSet() = default;
  /// Throws std::invalid_argument on a non-finite llr or duplicate id.
  explicit ScoreSet(std::vector<ScoreEntry> entries);

  std::span<const ScoreEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::optional<double> find(const TrialId &id) const;

  bool operator==(const ScoreSet &) const = default;

 private:
  std::vector<ScoreEntry> entries_;
};

struct EmbeddingRow {
  std::string segment_id;
  std::optional<std::string> speaker;
  std::vector<double> vector;

  bool operator==(const EmbeddingRow &) const = default;
};

/// Fixed-dimension vectors keyed by segment. Row order is preserved from
/// the input; segment ids are unique.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  /// Throws std::invalid_argument when dim == 0, a row has the wrong
  /// length or a non-finite coordinate, or a segment id repeats.
  EmbeddingTable(std::size_t dim, std::vector<EmbeddingRow> rows);

  std::size_t dim() const { return dim_; }
  std::span<const EmbeddingRow> rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const EmbeddingRow *find(std::string_view segment_id) const;

  /// True when every row carries a speaker label.
  bool fully_labeled() const;

  bool operator==(const EmbeddingTable &other) const {
    return dim_ == other.dim_ && rows_ == other.rows_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<EmbeddingRow> rows_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Model id -> enrollment segment ids (in file order).
using EnrollmentMap = std::map<std::string, std::vector<std::string>>;

// ---------------------------------------------------------------------------
// File formats. All are UTF-8, tab-separated, with an exact header line.

inline constexpr std::string_view kKeyHeader =
    "modelid\tsegmentid\ttargettype\tgender\tsource_match\tlanguage_match\t"
    "phone_match\tnum_enroll\ttrack";
inline constexpr std::string_view kScoreHeader = "modelid\tsegmentid\tLLR";
inline constexpr std::string_view kEnrollmentHeader = "modelid\tsegmentid";

TrialKey read_key(std::istream &in, const std::string &source = "<stream>");
TrialKey parse_key(const std::filesystem::path &path);
void write_key(const TrialKey &key, std::ostream &out);
void write_key(const TrialKey &key, const std::filesystem::path &path);

ScoreSet read_scores(std::istream &in, const std::string &source = "<stream>");
ScoreSet parse_scores(const std::filesystem::path &path);
void write_scores(const ScoreSet &scores, std::ostream &out);
void write_scores(const ScoreSet &scores, const std::filesystem::path &path);

/// Lenient score reading for submission validation: bad lines are recorded
/// instead of thrown. A bad header or an unreadable file still throws.
struct ScoreScan {
  ScoreSet scores;
  std::vector<std::size_t> malformed_lines;
  std::size_t nonfinite_scores = 0;
  std::vector<std::size_t> duplicate_lines;
};
ScoreScan scan_scores(std::istream &in, const std::string &source = "<stream>");
ScoreScan scan_scores(const std::filesystem::path &path);

EmbeddingTable read_embeddings(std::istream &in,
                               const std::string &source = "<stream>");
EmbeddingTable load_embeddings(const std::filesystem::path &path);
void write_embeddings(const EmbeddingTable &table, std::ostream &out);
void write_embeddings(const EmbeddingTable &table,
                      const std::filesystem::path &path);

EnrollmentMap read_enrollment(std::istream &in,
                              const std::string &source = "<stream>");
EnrollmentMap parse_enrollment(const std::filesystem::path &path);
void write_enrollment(const EnrollmentMap &map, std::ostream &out);
void write_enrollment(const EnrollmentMap &map,
                      const std::filesystem::path &path);

// ---------------------------------------------------------------------------
// Submission validation.

struct ValidationReport {
  static constexpr std::size_t kMaxSamples = 10;

  std::size_t missing_trials = 0;
  std::vector<TrialId> missing_sample;
  std::size_t extra_trials = 0;
  std::vector<TrialId> extra_sample;
  std::size_t malformed_lines = 0;
  std::vector<std::size_t> malformed_line_numbers;
  std::size_t nonfinite_scores = 0;

  bool accepted() const {
    return missing_trials == 0 && extra_trials == 0 && malformed_lines == 0 &&
           nonfinite_scores == 0;
  }
};

ValidationReport validate_submission(const ScoreSet &scores,
                                     const TrialKey &key);
/// Same as above, additionally folding in the problems found while scanning.
/// Duplicate lines count as malformed.
ValidationReport validate_submission(const ScoreScan &scan,
                                     const TrialKey &key);

std::string to_json(const ValidationReport &report);

}  // namespace sre

#endif  // SRE_TRIAL_DATA_H_
