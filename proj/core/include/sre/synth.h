// sre/synth.h

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


#ifndef SRE_SYNTH_H_
#define SRE_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sre/trial_data.h"

namespace sre::synth {

struct CountRange {
  std::size_t min = 1;
  std::size_t max = 1;
};

/// Condition-additive Gaussian scores. Penalties lower the target mean of
/// mismatched trials; the shift moves cross-language non-targets.
struct ScoreModel {
  double target_mean = 8.0;
  double target_sigma = 3.0;
  double nontarget_mean = -8.0;
  double nontarget_sigma = 3.0;
  double language_mismatch_penalty = 2.0;
  double source_mismatch_penalty = 1.5;
  double phone_mismatch_penalty = 1.0;
  double nontarget_language_mismatch_shift = -1.0;
};

/// x = mu_speaker + condition shifts + noise with mu ~ N(0, b^2 I) and
/// noise ~ N(0, w^2 I). Training speakers are out of domain (extra fixed
/// offset); development speakers share the evaluation domain.
struct EmbeddingModel {
  std::size_t dim = 32;
  double between_sigma = 1.0;
  double within_sigma = 0.5;
  double condition_shift_sigma = 0.3;
  double domain_shift = 0.5;
  std::size_t train_speakers = 200;
  std::size_t train_segments = 8;
  std::size_t dev_speakers = 20;
  std::size_t dev_segments = 10;
};

/// Face encodings: each video mixes frames of its speaker with frames of
/// unrelated faces.
struct VisualModel {
  std::size_t dim = 16;
  CountRange frames{4, 12};
  double speaker_frame_fraction = 0.6;
  double frame_sigma = 0.3;
  double image_sigma = 0.2;
};

struct SynthConfig {
  std::size_t n_speakers = 40;
  double male_fraction = 0.25;
  std::vector<std::string> languages{"cantonese", "english", "mandarin"};
  /// Share of speakers (per gender) who also speak a second language.
  double multilingual_fraction = 0.3;
  /// Single-segment CTS models, single-segment AfV models and 3-segment
  /// CTS models per speaker.
  std::size_t cts_models = 2;
  std::size_t afv_models = 1;
  std::size_t multi_segment_models = 1;
  CountRange cts_test{5, 7};
  CountRange afv_test{2, 4};
  std::size_t phones_per_speaker = 2;
  ScoreModel scores;
  EmbeddingModel embeddings;
  VisualModel visual;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const SynthConfig &config);
/// Missing fields keep their defaults; unknown fields are errors.
SynthConfig config_from_json(const std::string &text);
std::string config_to_json(const SynthConfig &config);

enum class Source { kCts, kAfv };
std::string_view to_string(Source s);

struct Speaker {
  std::string id;
  Gender gender = Gender::kFemale;
  std::vector<std::string> languages;  // primary first
};

struct Segment {
  std::string id;
  std::size_t speaker = 0;
  Source source = Source::kCts;
  std::string language;
  int phone = -1;  // CTS only
  bool enrollment = false;
};

struct Model {
  std::string id;
  std::size_t speaker = 0;
  Track track = Track::kAudio;
  Source source = Source::kCts;
  std::vector<std::size_t> segments;  // enrollment segments (audio models)
};

/// Speakers, segments and models of the synthetic evaluation set.
struct World {
  std::vector<Speaker> speakers;
  std::vector<Segment> segments;
  std::vector<Model> models;
};

World build_world(const SynthConfig &config);

/// Same-gender trials of every model of `track` against every test
/// segment (AfV videos for the visual tracks).
TrialKey generate_key(const SynthConfig &config, Track track = Track::kAudio);
TrialKey generate_key(const World &world, Track track);

/// Per-model random streams, one draw per trial in key order.
ScoreSet generate_scores(const TrialKey &key, const SynthConfig &config, std::uint64_t seed);

/// Audio enrollment map (model -> segments). Visual models map to their
/// face image id.
EnrollmentMap generate_enrollment(const World &world, Track track = Track::kAudio);

/// Labeled embeddings of every evaluation segment.
EmbeddingTable generate_embeddings(const SynthConfig &config, std::uint64_t seed);
/// Out-of-domain training and in-domain development sets.
EmbeddingTable generate_train_embeddings(const SynthConfig &config, std::uint64_t seed);
EmbeddingTable generate_dev_embeddings(const SynthConfig &config, std::uint64_t seed);

/// Frame encodings of every AfV test video (video id in the speaker
/// column) and face-image encodings for the visual models.
EmbeddingTable generate_frames(const SynthConfig &config, std::uint64_t seed);
EmbeddingTable generate_face_images(const SynthConfig &config, std::uint64_t seed);

/// Audio cells (gender x source match x language match) that have no
/// target trials. An empty list means every cell is populated.
std::vector<std::string> empty_required_cells(const TrialKey &key);

}  // namespace sre::synth

#endif  // SRE_SYNTH_H_
