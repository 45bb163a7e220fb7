// core/src/synth.cc

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


#include "sre/synth.h"

#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "sre/random.h"

namespace sre::synth {

namespace {

using Json = nlohmann::ordered_json;

void require(bool ok, const std::string &field, const std::string &what) {
  if (!ok) throw std::invalid_argument("synth config: '" + field + "' " + what);
}

void check_range(const CountRange &r, const std::string &field) {
  require(r.min >= 1, field, "minimum must be at least 1");
  require(r.min <= r.max, field, "minimum exceeds maximum");
}

// Reads known keys of one JSON object; anything else is an error.
class ObjectReader {
 public:
  ObjectReader(const Json &j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw std::invalid_argument("synth config: '" + path_ + "' must be an object");
  }
  template <typename T>
  void read(const char *key, T &value) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      value = j_.at(key).get<T>();
    } catch (const Json::exception &) {
      throw std::invalid_argument("synth config: '" + name(key) + "' has the wrong type");
    }
  }

  void read(const char *key, CountRange &value) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const Json &r = j_.at(key);
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_unsigned() || !r[1].is_number_unsigned())
      throw std::invalid_argument("synth config: '" + name(key) + "' must be [min, max]");
    value = {r[0].get<std::size_t>(), r[1].get<std::size_t>()};
  }

  const Json *child(const char *key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string name(const char *key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto &[key, value] : j_.items())
      if (!seen_.count(key))
        throw std::invalid_argument("synth config: unknown field '" +
                                    (path_.empty() ? key : path_ + "." + key) + "'");
  }

 private:
  const Json &j_;
  std::string path_;
  std::set<std::string> seen_;
};

Json range_json(const CountRange &r) { return Json::array({r.min, r.max}); }

std::size_t draw_count(Rng &rng, const CountRange &r) {
  return std::uniform_int_distribution<std::size_t>(r.min, r.max)(rng);
}

std::vector<double> gaussian(Rng &rng, std::size_t dim, double sigma) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(dim);
  for (double &x : v) x = sigma * n(rng);
  return v;
}

void add(std::vector<double> &a, const std::vector<double> &b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

std::string numbered(const std::string &prefix, std::size_t i) {
  std::string digits = std::to_string(i + 1);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return prefix + digits;
}

Match match(bool same) { return same ? Match::kYes : Match::kNo; }

// Speaker means and condition shifts of one domain.
class EmbeddingDrawer {
 public:
  EmbeddingDrawer(const SynthConfig &config, std::uint64_t seed, bool out_of_domain)
      : m_(config.embeddings), seed_(seed) {
    offset_.assign(m_.dim, 0.0);
    if (out_of_domain) {
      Rng rng = make_rng(seed, tag_hash("domain"));
      offset_ = gaussian(rng, m_.dim, m_.domain_shift);
    }
  }

  const std::vector<double> &shift(const std::string &condition) {
    auto it = shifts_.find(condition);
    if (it != shifts_.end()) return it->second;
    Rng rng = make_rng(seed_, tag_hash("shift:" + condition));
    return shifts_.emplace(condition, gaussian(rng, m_.dim, m_.condition_shift_sigma))
        .first->second;
  }

  // One stream per speaker: the mean first, then each segment's noise.
  Rng speaker_stream(const std::string &speaker) const {
    return make_rng(seed_, tag_hash("speaker:" + speaker));
  }
  std::vector<double> speaker_mean(Rng &rng) const {
    std::vector<double> mu = gaussian(rng, m_.dim, m_.between_sigma);
    add(mu, offset_);
    return mu;
  }
  std::vector<double> segment(Rng &rng, const std::vector<double> &mu, Source source,
                              const std::string &language) {
    std::vector<double> x = gaussian(rng, m_.dim, m_.within_sigma);
    add(x, mu);
    add(x, shift(std::string("source:") + std::string(to_string(source))));
    add(x, shift("language:" + language));
    return x;
  }

 private:
  const EmbeddingModel &m_;
  std::uint64_t seed_;
  std::vector<double> offset_;
  std::map<std::string, std::vector<double>> shifts_;
};

EmbeddingTable labeled_set(const SynthConfig &config, std::uint64_t seed, bool out_of_domain,
                           const std::string &prefix, std::size_t n_speakers,
                           std::size_t n_segments) {
  EmbeddingDrawer draw(config, seed, out_of_domain);
  std::vector<EmbeddingRow> rows;
  for (std::size_t s = 0; s < n_speakers; ++s) {
    std::string spk = numbered(prefix, s);
    Rng rng = draw.speaker_stream(spk);
    std::vector<double> mu = draw.speaker_mean(rng);
    for (std::size_t i = 0; i < n_segments; ++i) {
      Source source = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? Source::kCts : Source::kAfv;
      const std::string &lang = config.languages[std::uniform_int_distribution<std::size_t>(
          0, config.languages.size() - 1)(rng)];
      rows.push_back({numbered(spk + "_s", i), spk, draw.segment(rng, mu, source, lang)});
    }
  }
  return EmbeddingTable(config.embeddings.dim, std::move(rows));
}

std::vector<double> face(const SynthConfig &config, std::uint64_t seed, const std::string &speaker) {
  Rng rng = make_rng(seed, tag_hash("face:" + speaker));
  return gaussian(rng, config.visual.dim, 1.0);
}

std::string image_id(const Speaker &s) { return s.id + "_image"; }

}  // namespace

std::string_view to_string(Source s) { return s == Source::kCts ? "cts" : "afv"; }

void validate(const SynthConfig &c) {
  require(c.n_speakers >= 2, "n_speakers", "must be at least 2");
  require(c.male_fraction >= 0.0 && c.male_fraction <= 1.0, "male_fraction", "must be in [0, 1]");
  require(!c.languages.empty(), "languages", "must not be empty");
  std::set<std::string> langs;
  for (const std::string &l : c.languages) {
    require(is_valid_token(l), "languages", "contains an invalid name");
    require(langs.insert(l).second, "languages", "contains a duplicate");
  }
  require(c.multilingual_fraction >= 0.0 && c.multilingual_fraction <= 1.0,
          "multilingual_fraction", "must be in [0, 1]");
  require(c.cts_models + c.afv_models + c.multi_segment_models >= 1, "cts_models",
          "no models per speaker");
  check_range(c.cts_test, "cts_test");
  require(c.afv_test.min <= c.afv_test.max, "afv_test", "minimum exceeds maximum");
  require(c.phones_per_speaker >= 1, "phones_per_speaker", "must be at least 1");
  const ScoreModel &s = c.scores;
  require(s.target_sigma > 0.0, "scores.target_sigma", "must be positive");
  require(s.nontarget_sigma > 0.0, "scores.nontarget_sigma", "must be positive");
  for (double v : {s.target_mean, s.nontarget_mean, s.language_mismatch_penalty,
                   s.source_mismatch_penalty, s.phone_mismatch_penalty,
                   s.nontarget_language_mismatch_shift})
    require(std::isfinite(v), "scores", "values must be finite");
  const EmbeddingModel &e = c.embeddings;
  require(e.dim >= 1, "embeddings.dim", "must be at least 1");
  require(e.between_sigma >= 0.0, "embeddings.between_sigma", "must be non-negative");
  require(e.within_sigma > 0.0, "embeddings.within_sigma", "must be positive");
  require(e.condition_shift_sigma >= 0.0, "embeddings.condition_shift_sigma", "must be non-negative");
  require(e.domain_shift >= 0.0, "embeddings.domain_shift", "must be non-negative");
  require(e.train_speakers >= 2, "embeddings.train_speakers", "must be at least 2");
  require(e.train_segments >= 2, "embeddings.train_segments", "must be at least 2");
  require(e.dev_speakers >= 2, "embeddings.dev_speakers", "must be at least 2");
  require(e.dev_segments >= 2, "embeddings.dev_segments", "must be at least 2");
  const VisualModel &v = c.visual;
  require(v.dim >= 1, "visual.dim", "must be at least 1");
  check_range(v.frames, "visual.frames");
  require(v.speaker_frame_fraction >= 0.0 && v.speaker_frame_fraction <= 1.0,
          "visual.speaker_frame_fraction", "must be in [0, 1]");
  require(v.frame_sigma > 0.0, "visual.frame_sigma", "must be positive");
  require(v.image_sigma > 0.0, "visual.image_sigma", "must be positive");
}

SynthConfig config_from_json(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw std::invalid_argument(std::string("synth config: invalid JSON: ") + e.what());
  }
  SynthConfig c;
  ObjectReader r(j, "");
  r.read("seed", c.seed);
  r.read("n_speakers", c.n_speakers);
  r.read("male_fraction", c.male_fraction);
  r.read("languages", c.languages);
  r.read("multilingual_fraction", c.multilingual_fraction);
  r.read("cts_models", c.cts_models);
  r.read("afv_models", c.afv_models);
  r.read("multi_segment_models", c.multi_segment_models);
  r.read("cts_test", c.cts_test);
  r.read("afv_test", c.afv_test);
  r.read("phones_per_speaker", c.phones_per_speaker);
  if (const Json *s = r.child("scores")) {
    ObjectReader q(*s, "scores");
    q.read("target_mean", c.scores.target_mean);
    q.read("target_sigma", c.scores.target_sigma);
    q.read("nontarget_mean", c.scores.nontarget_mean);
    q.read("nontarget_sigma", c.scores.nontarget_sigma);
    q.read("language_mismatch_penalty", c.scores.language_mismatch_penalty);
    q.read("source_mismatch_penalty", c.scores.source_mismatch_penalty);
    q.read("phone_mismatch_penalty", c.scores.phone_mismatch_penalty);
    q.read("nontarget_language_mismatch_shift", c.scores.nontarget_language_mismatch_shift);
    q.finish();
  }
  if (const Json *s = r.child("embeddings")) {
    ObjectReader q(*s, "embeddings");
    q.read("dim", c.embeddings.dim);
    q.read("between_sigma", c.embeddings.between_sigma);
    q.read("within_sigma", c.embeddings.within_sigma);
    q.read("condition_shift_sigma", c.embeddings.condition_shift_sigma);
    q.read("domain_shift", c.embeddings.domain_shift);
    q.read("train_speakers", c.embeddings.train_speakers);
    q.read("train_segments", c.embeddings.train_segments);
    q.read("dev_speakers", c.embeddings.dev_speakers);
    q.read("dev_segments", c.embeddings.dev_segments);
    q.finish();
  }
  if (const Json *s = r.child("visual")) {
    ObjectReader q(*s, "visual");
    q.read("dim", c.visual.dim);
    q.read("frames", c.visual.frames);
    q.read("speaker_frame_fraction", c.visual.speaker_frame_fraction);
    q.read("frame_sigma", c.visual.frame_sigma);
    q.read("image_sigma", c.visual.image_sigma);
    q.finish();
  }
  r.finish();
  validate(c);
  return c;
}

std::string config_to_json(const SynthConfig &c) {
  Json j;
  j["seed"] = c.seed;
  j["n_speakers"] = c.n_speakers;
  j["male_fraction"] = c.male_fraction;
  j["languages"] = c.languages;
  j["multilingual_fraction"] = c.multilingual_fraction;
  j["cts_models"] = c.cts_models;
  j["afv_models"] = c.afv_models;
  j["multi_segment_models"] = c.multi_segment_models;
  j["cts_test"] = range_json(c.cts_test);
  j["afv_test"] = range_json(c.afv_test);
  j["phones_per_speaker"] = c.phones_per_speaker;
  j["scores"] = {{"target_mean", c.scores.target_mean},
                 {"target_sigma", c.scores.target_sigma},
                 {"nontarget_mean", c.scores.nontarget_mean},
                 {"nontarget_sigma", c.scores.nontarget_sigma},
                 {"language_mismatch_penalty", c.scores.language_mismatch_penalty},
                 {"source_mismatch_penalty", c.scores.source_mismatch_penalty},
                 {"phone_mismatch_penalty", c.scores.phone_mismatch_penalty},
                 {"nontarget_language_mismatch_shift",
                  c.scores.nontarget_language_mismatch_shift}};
  j["embeddings"] = {{"dim", c.embeddings.dim},
                     {"between_sigma", c.embeddings.between_sigma},
                     {"within_sigma", c.embeddings.within_sigma},
                     {"condition_shift_sigma", c.embeddings.condition_shift_sigma},
                     {"domain_shift", c.embeddings.domain_shift},
                     {"train_speakers", c.embeddings.train_speakers},
                     {"train_segments", c.embeddings.train_segments},
                     {"dev_speakers", c.embeddings.dev_speakers},
                     {"dev_segments", c.embeddings.dev_segments}};
  j["visual"] = {{"dim", c.visual.dim},
                 {"frames", range_json(c.visual.frames)},
                 {"speaker_frame_fraction", c.visual.speaker_frame_fraction},
                 {"frame_sigma", c.visual.frame_sigma},
                 {"image_sigma", c.visual.image_sigma}};
  return j.dump(2) + "\n";
}

World build_world(const SynthConfig &config) {
  validate(config);
  World w;
  const std::size_t n = config.n_speakers;
  const auto n_male = static_cast<std::size_t>(std::lround(config.male_fraction * static_cast<double>(n)));
  const std::size_t n_lang = config.languages.size();
  std::size_t index_in_gender[2] = {0, 0};
  const std::size_t gender_size[2] = {n - n_male, n_male};

  for (std::size_t s = 0; s < n; ++s) {
    Speaker spk;
    spk.id = numbered("spk", s);
    const int g = s < n_male ? 1 : 0;
    spk.gender = g == 1 ? Gender::kMale : Gender::kFemale;
    const std::size_t gi = index_in_gender[g]++;
    spk.languages.push_back(config.languages[gi % n_lang]);
    const auto n_multi = static_cast<std::size_t>(
        std::lround(config.multilingual_fraction * static_cast<double>(gender_size[g])));
    if (n_lang >= 2 && gi < n_multi) spk.languages.push_back(config.languages[(gi + 1) % n_lang]);
    w.speakers.push_back(spk);
  }

  auto add_segment = [&](std::size_t s, std::string id, Source source, std::string lang, int phone,
                         bool enrollment) {
    w.segments.push_back({std::move(id), s, source, std::move(lang), phone, enrollment});
    return w.segments.size() - 1;
  };

  for (std::size_t s = 0; s < n; ++s) {
    const Speaker &spk = w.speakers[s];
    const std::string &primary = spk.languages.front();
    std::optional<std::size_t> first_cts;
    for (std::size_t m = 0; m < config.cts_models; ++m) {
      std::size_t seg = add_segment(s, numbered(spk.id + "_ce", m), Source::kCts, primary, 0, true);
      if (!first_cts) first_cts = seg;
      w.models.push_back({numbered(spk.id + "_c", m), s, Track::kAudio, Source::kCts, {seg}});
    }
    for (std::size_t m = 0; m < config.afv_models; ++m) {
      std::size_t seg = add_segment(s, numbered(spk.id + "_ae", m), Source::kAfv, primary, -1, true);
      w.models.push_back({numbered(spk.id + "_a", m), s, Track::kAudio, Source::kAfv, {seg}});
    }
    for (std::size_t m = 0; m < config.multi_segment_models; ++m) {
      Model model{numbered(spk.id + "_m", m), s, Track::kAudio, Source::kCts, {}};
      for (std::size_t j = 0; j < 3; ++j)
        model.segments.push_back(add_segment(s, numbered(model.id + "e", j), Source::kCts,
                                             primary, 0, true));
      w.models.push_back(std::move(model));
    }
    w.models.push_back({spk.id + "_img", s, Track::kVisual, Source::kAfv, {}});
    Model av{spk.id + "_av", s, Track::kAudioVisual, Source::kCts, {}};
    if (first_cts) av.segments.push_back(*first_cts);
    w.models.push_back(std::move(av));

    Rng rng = make_rng(config.seed, tag_hash("world:" + spk.id));
    const std::size_t n_cts = draw_count(rng, config.cts_test);
    const std::size_t n_afv = draw_count(rng, config.afv_test);
    const std::size_t nl = spk.languages.size();
    for (std::size_t i = 0; i < n_cts; ++i)
      add_segment(s, numbered(spk.id + "_ct", i), Source::kCts, spk.languages[i % nl],
                  static_cast<int>(i % config.phones_per_speaker), false);
    for (std::size_t i = 0; i < n_afv; ++i)
      add_segment(s, numbered(spk.id + "_at", i), Source::kAfv, spk.languages[i % nl], -1, false);
  }
  return w;
}

TrialKey generate_key(const World &w, Track track) {
  std::vector<TrialRecord> records;
  for (const Model &m : w.models) {
    if (m.track != track) continue;
    const Speaker &ms = w.speakers[m.speaker];
    const Segment *enroll = m.segments.empty() ? nullptr : &w.segments[m.segments.front()];
    for (const Segment &t : w.segments) {
      if (t.enrollment) continue;
      if (track != Track::kAudio && t.source != Source::kAfv) continue;
      const Speaker &ts = w.speakers[t.speaker];
      if (ts.gender != ms.gender) continue;
      TrialRecord r;
      r.id = {m.id, t.id};
      r.meta.track = track;
      r.meta.gender = ms.gender;
      r.meta.label = m.speaker == t.speaker ? Label::kTarget : Label::kNontarget;
      r.meta.num_enroll_segments = track == Track::kAudio ? static_cast<int>(m.segments.size()) : 1;
      r.meta.phone_match = Match::kNotApplicable;
      if (track == Track::kVisual) {
        r.meta.source_match = Match::kNotApplicable;
        r.meta.language_match = Match::kNotApplicable;
      } else {
        const std::string &enroll_lang = enroll ? enroll->language : ms.languages.front();
        r.meta.source_match = match(m.source == t.source);
        r.meta.language_match = match(enroll_lang == t.language);
        if (track == Track::kAudio && r.meta.is_target() && m.source == Source::kCts &&
            t.source == Source::kCts)
          r.meta.phone_match = match(enroll->phone == t.phone);
      }
      records.push_back(std::move(r));
    }
  }
  return TrialKey(track, std::move(records));
}

TrialKey generate_key(const SynthConfig &config, Track track) {
  return generate_key(build_world(config), track);
}

ScoreSet generate_scores(const TrialKey &key, const SynthConfig &config, std::uint64_t seed) {
  validate(config);
  const ScoreModel &m = config.scores;
  std::vector<ScoreEntry> out;
  out.reserve(key.size());
  std::normal_distribution<double> normal(0.0, 1.0);
  Rng rng;
  const std::string *current = nullptr;
  for (const TrialRecord &r : key.records()) {
    if (!current || *current != r.id.model_id) {
      current = &r.id.model_id;
      rng = make_rng(seed, tag_hash("scores:" + r.id.model_id));
      normal.reset();
    }
    const double z = normal(rng);
    double mean, sigma;
    if (r.meta.is_target()) {
      mean = m.target_mean;
      sigma = m.target_sigma;
      if (r.meta.language_match == Match::kNo) mean -= m.language_mismatch_penalty;
      if (r.meta.source_match == Match::kNo) mean -= m.source_mismatch_penalty;
      if (r.meta.phone_match == Match::kNo) mean -= m.phone_mismatch_penalty;
    } else {
      mean = m.nontarget_mean;
      sigma = m.nontarget_sigma;
      if (r.meta.language_match == Match::kNo) mean += m.nontarget_language_mismatch_shift;
    }
    out.push_back({r.id, mean + sigma * z});
  }
  return ScoreSet(std::move(out));
}

EnrollmentMap generate_enrollment(const World &w, Track track) {
  EnrollmentMap map;
  for (const Model &m : w.models) {
    if (m.track != track) continue;
    std::vector<std::string> segs;
    for (std::size_t i : m.segments) segs.push_back(w.segments[i].id);
    if (track != Track::kAudio) segs.push_back(image_id(w.speakers[m.speaker]));
    map[m.id] = std::move(segs);
  }
  return map;
}

EmbeddingTable generate_embeddings(const SynthConfig &config, std::uint64_t seed) {
  const World w = build_world(config);
  EmbeddingDrawer draw(config, seed, false);
  std::vector<std::vector<std::size_t>> by_speaker(w.speakers.size());
  for (std::size_t i = 0; i < w.segments.size(); ++i) by_speaker[w.segments[i].speaker].push_back(i);
  std::vector<EmbeddingRow> rows;
  for (std::size_t s = 0; s < w.speakers.size(); ++s) {
    const Speaker &spk = w.speakers[s];
    Rng rng = draw.speaker_stream("eval:" + spk.id);
    std::vector<double> mu = draw.speaker_mean(rng);
    for (std::size_t i : by_speaker[s]) {
      const Segment &seg = w.segments[i];
      rows.push_back({seg.id, spk.id, draw.segment(rng, mu, seg.source, seg.language)});
    }
  }
  return EmbeddingTable(config.embeddings.dim, std::move(rows));
}

EmbeddingTable generate_train_embeddings(const SynthConfig &config, std::uint64_t seed) {
  validate(config);
  return labeled_set(config, seed, true, "trn", config.embeddings.train_speakers,
                     config.embeddings.train_segments);
}

EmbeddingTable generate_dev_embeddings(const SynthConfig &config, std::uint64_t seed) {
  validate(config);
  return labeled_set(config, seed, false, "dev", config.embeddings.dev_speakers,
                     config.embeddings.dev_segments);
}

EmbeddingTable generate_frames(const SynthConfig &config, std::uint64_t seed) {
  const World w = build_world(config);
  const VisualModel &v = config.visual;
  std::vector<EmbeddingRow> rows;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const Segment &seg : w.segments) {
    if (seg.enrollment || seg.source != Source::kAfv) continue;
    const std::vector<double> own = face(config, seed, w.speakers[seg.speaker].id);
    Rng rng = make_rng(seed, tag_hash("video:" + seg.id));
    const std::size_t n = draw_count(rng, v.frames);
    for (std::size_t f = 0; f < n; ++f) {
      bool speaker_frame = f == 0 || std::uniform_real_distribution<double>(0.0, 1.0)(rng) <
                                         v.speaker_frame_fraction;
      std::vector<double> x = speaker_frame ? own : gaussian(rng, v.dim, 1.0);
      add(x, gaussian(rng, v.dim, v.frame_sigma));
      rows.push_back({numbered(seg.id + "_f", f), seg.id, std::move(x)});
    }
  }
  return EmbeddingTable(v.dim, std::move(rows));
}

EmbeddingTable generate_face_images(const SynthConfig &config, std::uint64_t seed) {
  const World w = build_world(config);
  std::vector<EmbeddingRow> rows;
  for (const Speaker &spk : w.speakers) {
    std::vector<double> x = face(config, seed, spk.id);
    Rng rng = make_rng(seed, tag_hash("image:" + spk.id));
    add(x, gaussian(rng, config.visual.dim, config.visual.image_sigma));
    rows.push_back({image_id(spk), spk.id, std::move(x)});
  }
  return EmbeddingTable(config.visual.dim, std::move(rows));
}

std::vector<std::string> empty_required_cells(const TrialKey &key) {
  std::set<Gender> genders;
  std::map<std::tuple<Gender, Match, Match>, std::size_t> targets;
  for (const TrialRecord &r : key.records()) {
    genders.insert(r.meta.gender);
    if (r.meta.is_target() && r.meta.num_enroll_segments == 1)
      ++targets[{r.meta.gender, r.meta.source_match, r.meta.language_match}];
  }
  std::vector<std::string> empty;
  if (key.track() != Track::kAudio) return empty;
  for (Gender g : genders)
    for (Match s : {Match::kYes, Match::kNo})
      for (Match l : {Match::kYes, Match::kNo})
        if (targets[{g, s, l}] == 0)
          empty.push_back("gender=" + std::string(to_string(g)) + ",source_match=" +
                          std::string(to_string(s)) + ",language_match=" +
                          std::string(to_string(l)));
  return empty;
}

}  // namespace sre::synth
