// core/src/trial_data.cc

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

#include "sre/trial_data.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <utility>

#include "json.hpp"
#include "sre/text_io.h"

namespace sre {

namespace {

std::string describe(const std::string &source, std::size_t line,
                     const std::string &field, const std::string &message) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line);
  out += ": ";
  if (!field.empty()) out += "field '" + field + "': ";
  out += message;
  return out;
}

// Reads the header and checks it. Throws on empty input or mismatch.
void expect_header(std::istream &in, const std::string &source,
                   std::string_view expected) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(source, 1, "", "empty file (missing header)");
  if (chomp(line) != expected)
    throw ParseError(source, 1, "header",
                     "malformed header; expected '" + std::string(expected) +
                         "'");
}

template <typename T>
struct Lined {
  T value;
  std::size_t line;
};

// Sorts by id and reports the first duplicate (at its later line).
template <typename T, typename IdOf>
void sort_and_check_unique(std::vector<Lined<T>> &items, IdOf id_of,
                           const std::string &source) {
  std::sort(items.begin(), items.end(), [&](const auto &a, const auto &b) {
    return id_of(a.value) < id_of(b.value);
  });
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (id_of(items[i - 1].value) == id_of(items[i].value)) {
      const TrialId &id = id_of(items[i].value);
      std::size_t line = std::max(items[i - 1].line, items[i].line);
      throw ParseError(source, line, "modelid/segmentid",
                       "duplicate trial (" + id.model_id + ", " +
                           id.segment_id + ")");
    }
  }
}

std::string token_problem(std::string_view token) {
  if (token.empty()) return "empty token";
  return "token contains a control character";
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::string field,
                       const std::string &message)
    : std::runtime_error(describe(source, line, field, message)),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

std::string_view to_string(Label v) {
  return v == Label::kTarget ? "target" : "nontarget";
}

std::string_view to_string(Gender v) {
  return v == Gender::kMale ? "male" : "female";
}

std::string_view to_string(Match v) {
  switch (v) {
    case Match::kYes: return "Y";
    case Match::kNo: return "N";
    case Match::kNotApplicable: return "NA";
  }
  return "NA";
}

std::string_view to_string(Track v) {
  switch (v) {
    case Track::kAudio: return "audio";
    case Track::kVisual: return "visual";
    case Track::kAudioVisual: return "audio-visual";
  }
  return "audio";
}

std::optional<Label> parse_label(std::string_view s) {
  if (s == "target") return Label::kTarget;
  if (s == "nontarget") return Label::kNontarget;
  return std::nullopt;
}

std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "male") return Gender::kMale;
  if (s == "female") return Gender::kFemale;
  return std::nullopt;
}

std::optional<Match> parse_match(std::string_view s) {
  if (s == "Y") return Match::kYes;
  if (s == "N") return Match::kNo;
  if (s == "NA") return Match::kNotApplicable;
  return std::nullopt;
}

std::optional<Track> parse_track(std::string_view s) {
  if (s == "audio") return Track::kAudio;
  if (s == "visual") return Track::kVisual;
  if (s == "audio-visual") return Track::kAudioVisual;
  return std::nullopt;
}

bool is_valid_token(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token)
    if (c == '\t' || c == '\n' || c == '\r') return false;
  return true;
}

std::optional<RecordProblem> check_record(const TrialRecord &r) {
  if (!is_valid_token(r.id.model_id))
    return RecordProblem{"modelid", token_problem(r.id.model_id)};
  if (!is_valid_token(r.id.segment_id))
    return RecordProblem{"segmentid", token_problem(r.id.segment_id)};
  if (r.meta.num_enroll_segments != 1 && r.meta.num_enroll_segments != 3)
    return RecordProblem{"num_enroll", "must be 1 or 3"};
  if (r.meta.phone_match == Match::kYes && !r.meta.is_target())
    return RecordProblem{"phone_match",
                         "phone number match is only possible on targets"};
  if (r.meta.num_enroll_segments == 3 && r.meta.track != Track::kAudio)
    return RecordProblem{"num_enroll",
                         "3-segment enrollment only exists in the audio track"};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

TrialKey::TrialKey(Track track, std::vector<TrialRecord> records)
    : track_(track), records_(std::move(records)) {
  for (const TrialRecord &r : records_) {
    if (auto problem = check_record(r))
      throw std::invalid_argument("trial (" + r.id.model_id + ", " +
                                  r.id.segment_id + "): " + problem->field +
                                  ": " + problem->message);
    if (r.meta.track != track_)
      throw std::invalid_argument("trial (" + r.id.model_id + ", " +
                                  r.id.segment_id + ") belongs to track " +
                                  std::string(to_string(r.meta.track)));
  }
  std::sort(records_.begin(), records_.end(),
            [](const TrialRecord &a, const TrialRecord &b) { return a.id < b.id; });
  auto dup = std::adjacent_find(
      records_.begin(), records_.end(),
      [](const TrialRecord &a, const TrialRecord &b) { return a.id == b.id; });
  if (dup != records_.end())
    throw std::invalid_argument("duplicate trial (" + dup->id.model_id + ", " +
                                dup->id.segment_id + ")");
}

std::size_t TrialKey::num_targets() const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(),
                    [](const TrialRecord &r) { return r.meta.is_target(); }));
}

const TrialRecord *TrialKey::find(const TrialId &id) const {
  auto it = std::lower_bound(
      records_.begin(), records_.end(), id,
      [](const TrialRecord &r, const TrialId &v) { return r.id < v; });
  if (it == records_.end() || it->id != id) return nullptr;
  return &*it;
}

std::vector<std::string> TrialKey::model_ids() const {
  std::vector<std::string> ids;
  for (const TrialRecord &r : records_)
    if (ids.empty() || ids.back() != r.id.model_id) ids.push_back(r.id.model_id);
  return ids;
}

ScoreSet::ScoreSet(std::vector<ScoreEntry> entries) : entries_(std::move(entries)) {
  for (const ScoreEntry &e : entries_) {
    if (!std::isfinite(e.llr))
      throw std::invalid_argument("non-finite score for trial (" +
                                  e.id.model_id + ", " + e.id.segment_id + ")");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const ScoreEntry &a, const ScoreEntry &b) { return a.id < b.id; });
  auto dup = std::adjacent_find(
      entries_.begin(), entries_.end(),
      [](const ScoreEntry &a, const ScoreEntry &b) { return a.id == b.id; });
  if (dup != entries_.end())
    throw std::invalid_argument("duplicate score for trial (" +
                                dup->id.model_id + ", " + dup->id.segment_id +
                                ")");
}

std::optional<double> ScoreSet::find(const TrialId &id) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const ScoreEntry &e, const TrialId &v) { return e.id < v; });
  if (it == entries_.end() || it->id != id) return std::nullopt;
  return it->llr;
}

EmbeddingTable::EmbeddingTable(std::size_t dim, std::vector<EmbeddingRow> rows)
    : dim_(dim), rows_(std::move(rows)) {
  if (dim_ == 0) throw std::invalid_argument("embedding dimension must be >= 1");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const EmbeddingRow &row = rows_[i];
    if (!is_valid_token(row.segment_id))
      throw std::invalid_argument("invalid segment id in embedding row " +
                                  std::to_string(i));
    if (row.vector.size() != dim_)
      throw std::invalid_argument("embedding '" + row.segment_id + "' has " +
                                  std::to_string(row.vector.size()) +
                                  " coordinates, expected " +
                                  std::to_string(dim_));
    for (double x : row.vector)
      if (!std::isfinite(x))
        throw std::invalid_argument("non-finite coordinate in embedding '" +
                                    row.segment_id + "'");
    if (!index_.emplace(row.segment_id, i).second)
      throw std::invalid_argument("duplicate embedding segment id '" +
                                  row.segment_id + "'");
  }
}

const EmbeddingRow *EmbeddingTable::find(std::string_view segment_id) const {
  auto it = index_.find(segment_id);
  return it == index_.end() ? nullptr : &rows_[it->second];
}

bool EmbeddingTable::fully_labeled() const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](const EmbeddingRow &r) { return r.speaker.has_value(); });
}

// ---------------------------------------------------------------------------
// Keys.

TrialKey read_key(std::istream &in, const std::string &source) {
  expect_header(in, source, kKeyHeader);
  std::vector<Lined<TrialRecord>> rows;
  std::optional<Track> track;
  std::string raw;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = chomp(raw);
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 9)
      throw ParseError(source, line_no, "",
                       "expected 9 fields, found " + std::to_string(f.size()));
    auto bad = [&](const char *field, std::string_view value) {
      return ParseError(source, line_no, field,
                        "unknown value '" + std::string(value) + "'");
    };
    TrialRecord r;
    r.id.model_id = std::string(f[0]);
    r.id.segment_id = std::string(f[1]);
    if (!is_valid_token(r.id.model_id))
      throw ParseError(source, line_no, "modelid", "empty token");
    if (!is_valid_token(r.id.segment_id))
      throw ParseError(source, line_no, "segmentid", "empty token");
    auto label = parse_label(f[2]);
    if (!label) throw bad("targettype", f[2]);
    auto gender = parse_gender(f[3]);
    if (!gender) throw bad("gender", f[3]);
    auto source_match = parse_match(f[4]);
    if (!source_match) throw bad("source_match", f[4]);
    auto language_match = parse_match(f[5]);
    if (!language_match) throw bad("language_match", f[5]);
    auto phone_match = parse_match(f[6]);
    if (!phone_match) throw bad("phone_match", f[6]);
    int num_enroll = 0;
    if (f[7] == "1") num_enroll = 1;
    else if (f[7] == "3") num_enroll = 3;
    else throw bad("num_enroll", f[7]);
    auto row_track = parse_track(f[8]);
    if (!row_track) throw bad("track", f[8]);
    if (!track) track = row_track;
    if (*row_track != *track)
      throw ParseError(source, line_no, "track",
                       "mixed tracks in one key ('" + std::string(f[8]) +
                           "' after '" + std::string(to_string(*track)) + "')");
    r.meta = TrialMetadata{*label,          *gender,    *source_match,
                           *language_match, *phone_match, num_enroll,
                           *row_track};
    if (auto problem = check_record(r))
      throw ParseError(source, line_no, problem->field, problem->message);
    rows.push_back({std::move(r), line_no});
  }
  if (rows.empty()) throw ParseError(source, 2, "", "key contains no trials");
  sort_and_check_unique(rows, [](const TrialRecord &r) -> const TrialId & {
    return r.id;
  }, source);
  std::vector<TrialRecord> records;
  records.reserve(rows.size());
  for (auto &row : rows) records.push_back(std::move(row.value));
  return TrialKey(*track, std::move(records));
}

TrialKey parse_key(const std::filesystem::path &path) {
  auto in = open_input(path);
  return read_key(in, path.string());
}

void write_key(const TrialKey &key, std::ostream &out) {
  out << kKeyHeader << '\n';
  for (const TrialRecord &r : key.records()) {
    out << r.id.model_id << '\t' << r.id.segment_id << '\t'
        << to_string(r.meta.label) << '\t' << to_string(r.meta.gender) << '\t'
        << to_string(r.meta.source_match) << '\t'
        << to_string(r.meta.language_match) << '\t'
        << to_string(r.meta.phone_match) << '\t' << r.meta.num_enroll_segments
        << '\t' << to_string(r.meta.track) << '\n';
  }
}

void write_key(const TrialKey &key, const std::filesystem::path &path) {
  auto out = open_output(path);
  write_key(key, out);
}

// ---------------------------------------------------------------------------
// Scores.

namespace {

enum class ScoreLineStatus { kOk, kMalformed, kNonfinite };

ScoreLineStatus parse_score_line(std::string_view line, ScoreEntry &entry,
                                 std::string &field, std::string &message) {
  auto f = split_tabs(line);
  if (f.size() != 3) {
    message = "expected 3 fields, found " + std::to_string(f.size());
    return ScoreLineStatus::kMalformed;
  }
  if (!is_valid_token(f[0])) {
    field = "modelid";
    message = "empty token";
    return ScoreLineStatus::kMalformed;
  }
  if (!is_valid_token(f[1])) {
    field = "segmentid";
    message = "empty token";
    return ScoreLineStatus::kMalformed;
  }
  auto value = parse_double(f[2]);
  field = "LLR";
  if (!value) {
    message = "non-numeric LLR '" + std::string(f[2]) + "'";
    return ScoreLineStatus::kMalformed;
  }
  if (!std::isfinite(*value)) {
    message = "non-finite LLR '" + std::string(f[2]) + "'";
    return ScoreLineStatus::kNonfinite;
  }
  entry.id.model_id = std::string(f[0]);
  entry.id.segment_id = std::string(f[1]);
  entry.llr = *value;
  return ScoreLineStatus::kOk;
}

}  // namespace

ScoreSet read_scores(std::istream &in, const std::string &source) {
  expect_header(in, source, kScoreHeader);
  std::vector<Lined<ScoreEntry>> rows;
  std::string raw, field, message;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = chomp(raw);
    if (line.empty()) continue;
    ScoreEntry e;
    field.clear();
    if (parse_score_line(line, e, field, message) != ScoreLineStatus::kOk)
      throw ParseError(source, line_no, field, message);
    rows.push_back({std::move(e), line_no});
  }
  sort_and_check_unique(rows, [](const ScoreEntry &e) -> const TrialId & {
    return e.id;
  }, source);
  std::vector<ScoreEntry> entries;
  entries.reserve(rows.size());
  for (auto &row : rows) entries.push_back(std::move(row.value));
  return ScoreSet(std::move(entries));
}

ScoreSet parse_scores(const std::filesystem::path &path) {
  auto in = open_input(path);
  return read_scores(in, path.string());
}

ScoreScan scan_scores(std::istream &in, const std::string &source) {
  expect_header(in, source, kScoreHeader);
  ScoreScan scan;
  std::vector<Lined<ScoreEntry>> rows;
  std::string raw, field, message;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = chomp(raw);
    if (line.empty()) continue;
    ScoreEntry e;
    switch (parse_score_line(line, e, field, message)) {
      case ScoreLineStatus::kOk: rows.push_back({std::move(e), line_no}); break;
      case ScoreLineStatus::kMalformed: scan.malformed_lines.push_back(line_no); break;
      case ScoreLineStatus::kNonfinite: ++scan.nonfinite_scores; break;
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
    return a.value.id < b.value.id;
  });
  std::vector<ScoreEntry> entries;
  entries.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!entries.empty() && entries.back().id == rows[i].value.id) {
      scan.duplicate_lines.push_back(rows[i].line);
      continue;
    }
    entries.push_back(std::move(rows[i].value));
  }
  std::sort(scan.duplicate_lines.begin(), scan.duplicate_lines.end());
  scan.scores = ScoreSet(std::move(entries));
  return scan;
}

ScoreScan scan_scores(const std::filesystem::path &path) {
  auto in = open_input(path);
  return scan_scores(in, path.string());
}

void write_scores(const ScoreSet &scores, std::ostream &out) {
  out << kScoreHeader << '\n';
  for (const ScoreEntry &e : scores.entries())
    out << e.id.model_id << '\t' << e.id.segment_id << '\t'
        << format_double(e.llr) << '\n';
}

void write_scores(const ScoreSet &scores, const std::filesystem::path &path) {
  auto out = open_output(path);
  write_scores(scores, out);
}

// ---------------------------------------------------------------------------
// Embeddings.

EmbeddingTable read_embeddings(std::istream &in, const std::string &source) {
  std::string raw;
  if (!std::getline(in, raw))
    throw ParseError(source, 1, "", "empty file (missing header)");
  auto header = split_tabs(chomp(raw));
  if (header.size() != 3 || header[0] != "segmentid" || header[1] != "speaker" ||
      header[2].substr(0, 4) != "dim=")
    throw ParseError(source, 1, "header",
                     "malformed header; expected 'segmentid\\tspeaker\\tdim=<d>'");
  std::string_view dim_text = header[2].substr(4);
  std::size_t dim = 0;
  if (dim_text.empty() ||
      !std::all_of(dim_text.begin(), dim_text.end(),
                   [](char c) { return c >= '0' && c <= '9'; }) ||
      (dim = std::stoul(std::string(dim_text))) == 0)
    throw ParseError(source, 1, "dim", "dimension must be a positive integer");

  std::vector<EmbeddingRow> rows;
  std::map<std::string, std::size_t, std::less<>> seen;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = chomp(raw);
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != dim + 2)
      throw ParseError(source, line_no, "",
                       "ragged row: expected " + std::to_string(dim) +
                           " coordinates, found " +
                           std::to_string(f.size() < 2 ? 0 : f.size() - 2));
    if (!is_valid_token(f[0]))
      throw ParseError(source, line_no, "segmentid", "empty token");
    if (!is_valid_token(f[1]))
      throw ParseError(source, line_no, "speaker", "empty token");
    EmbeddingRow row;
    row.segment_id = std::string(f[0]);
    if (f[1] != "-") row.speaker = std::string(f[1]);
    row.vector.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      auto v = parse_double(f[j + 2]);
      if (!v || !std::isfinite(*v))
        throw ParseError(source, line_no, "v" + std::to_string(j + 1),
                         "non-numeric coordinate '" + std::string(f[j + 2]) +
                             "'");
      row.vector.push_back(*v);
    }
    auto [it, inserted] = seen.emplace(row.segment_id, line_no);
    if (!inserted)
      throw ParseError(source, line_no, "segmentid",
                       "duplicate segment '" + row.segment_id + "'");
    rows.push_back(std::move(row));
  }
  return EmbeddingTable(dim, std::move(rows));
}

EmbeddingTable load_embeddings(const std::filesystem::path &path) {
  auto in = open_input(path);
  return read_embeddings(in, path.string());
}

void write_embeddings(const EmbeddingTable &table, std::ostream &out) {
  out << "segmentid\tspeaker\tdim=" << table.dim() << '\n';
  for (const EmbeddingRow &row : table.rows()) {
    out << row.segment_id << '\t' << (row.speaker ? *row.speaker : "-");
    for (double x : row.vector) out << '\t' << format_double(x);
    out << '\n';
  }
}

void write_embeddings(const EmbeddingTable &table,
                      const std::filesystem::path &path) {
  auto out = open_output(path);
  write_embeddings(table, out);
}

// ---------------------------------------------------------------------------
// Enrollment lists.

EnrollmentMap read_enrollment(std::istream &in, const std::string &source) {
  expect_header(in, source, kEnrollmentHeader);
  EnrollmentMap map;
  std::string raw;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = chomp(raw);
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 2)
      throw ParseError(source, line_no, "",
                       "expected 2 fields, found " + std::to_string(f.size()));
    if (!is_valid_token(f[0]))
      throw ParseError(source, line_no, "modelid", "empty token");
    if (!is_valid_token(f[1]))
      throw ParseError(source, line_no, "segmentid", "empty token");
    auto &segments = map[std::string(f[0])];
    if (std::find(segments.begin(), segments.end(), f[1]) != segments.end())
      throw ParseError(source, line_no, "segmentid",
                       "segment listed twice for model '" + std::string(f[0]) +
                           "'");
    segments.emplace_back(f[1]);
  }
  if (map.empty()) throw ParseError(source, 2, "", "no enrollment entries");
  return map;
}

EnrollmentMap parse_enrollment(const std::filesystem::path &path) {
  auto in = open_input(path);
  return read_enrollment(in, path.string());
}

void write_enrollment(const EnrollmentMap &map, std::ostream &out) {
  out << kEnrollmentHeader << '\n';
  for (const auto &[model, segments] : map)
    for (const std::string &seg : segments) out << model << '\t' << seg << '\n';
}

void write_enrollment(const EnrollmentMap &map,
                      const std::filesystem::path &path) {
  auto out = open_output(path);
  write_enrollment(map, out);
}

// ---------------------------------------------------------------------------
// Validation.

ValidationReport validate_submission(const ScoreSet &scores,
                                     const TrialKey &key) {
  ValidationReport report;
  auto key_records = key.records();
  auto score_entries = scores.entries();
  // Both sides are sorted by TrialId: a single merge pass finds the
  // symmetric difference.
  std::size_t i = 0, j = 0;
  auto note_missing = [&](const TrialId &id) {
    ++report.missing_trials;
    if (report.missing_sample.size() < ValidationReport::kMaxSamples)
      report.missing_sample.push_back(id);
  };
  auto note_extra = [&](const TrialId &id) {
    ++report.extra_trials;
    if (report.extra_sample.size() < ValidationReport::kMaxSamples)
      report.extra_sample.push_back(id);
  };
  while (i < key_records.size() || j < score_entries.size()) {
    if (j == score_entries.size()) {
      note_missing(key_records[i++].id);
    } else if (i == key_records.size()) {
      note_extra(score_entries[j++].id);
    } else if (key_records[i].id < score_entries[j].id) {
      note_missing(key_records[i++].id);
    } else if (score_entries[j].id < key_records[i].id) {
      note_extra(score_entries[j++].id);
    } else {
      ++i;
      ++j;
    }
  }
  return report;
}

ValidationReport validate_submission(const ScoreScan &scan,
                                     const TrialKey &key) {
  ValidationReport report = validate_submission(scan.scores, key);
  std::vector<std::size_t> bad = scan.malformed_lines;
  bad.insert(bad.end(), scan.duplicate_lines.begin(), scan.duplicate_lines.end());
  std::sort(bad.begin(), bad.end());
  report.malformed_lines = bad.size();
  report.malformed_line_numbers = std::move(bad);
  report.nonfinite_scores = scan.nonfinite_scores;
  return report;
}

std::string to_json(const ValidationReport &report) {
  using nlohmann::ordered_json;
  auto ids = [](const std::vector<TrialId> &v) {
    ordered_json arr = ordered_json::array();
    for (const TrialId &id : v) arr.push_back({id.model_id, id.segment_id});
    return arr;
  };
  ordered_json j;
  j["verdict"] = report.accepted() ? "accept" : "reject";
  j["missing_trials"] = {{"count", report.missing_trials},
                         {"sample", ids(report.missing_sample)}};
  j["extra_trials"] = {{"count", report.extra_trials},
                       {"sample", ids(report.extra_sample)}};
  j["malformed_lines"] = {{"count", report.malformed_lines},
                          {"line_numbers", report.malformed_line_numbers}};
  j["nonfinite_scores"] = {{"count", report.nonfinite_scores}};
  return j.dump(2);
}

}  // namespace sre
