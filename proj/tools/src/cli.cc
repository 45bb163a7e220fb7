// tools/src/cli.cc

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


#include "sre/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sre/backend/model_io.h"
#include "sre/cost_report.h"
#include "sre/det.h"
#include "sre/manifest.h"
#include "sre/metrics.h"
#include "sre/random.h"
#include "sre/synth.h"
#include "sre/text_io.h"
#include "sre/trial_data.h"
#include "sre/visual.h"

namespace sre::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Problems with the command line or the input files (exit 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string schema = "auto";
  std::string points;
  std::string out_dir = ".";
  bool include_3seg = false;
};

// Runs a loader, turning any failure into an InputError that names the file.
template <typename F>
auto load(const std::string &what, const std::string &path, F &&f) -> decltype(f(path)) {
  try {
    return f(path);
  } catch (const ParseError &) {
    throw;
  } catch (const std::exception &e) {
    throw InputError(what + " '" + path + "': " + e.what());
  }
}

TrialKey load_key(const std::string &p) {
  return load("key", p, [](const std::string &x) { return parse_key(x); });
}
ScoreSet load_scores(const std::string &p) {
  return load("scores", p, [](const std::string &x) { return parse_scores(x); });
}
EmbeddingTable load_table(const std::string &p) {
  return load("embeddings", p, [](const std::string &x) { return load_embeddings(x); });
}
EnrollmentMap load_enrollment(const std::string &p) {
  return load("enrollment", p, [](const std::string &x) { return parse_enrollment(x); });
}

std::uint64_t require_seed(const GlobalOptions &g, const std::string &command) {
  if (!g.seed) throw InputError("'" + command + "' is stochastic and needs --seed");
  return *g.seed;
}

std::vector<OperatingPoint> operating_points(const GlobalOptions &g) {
  if (g.points.empty()) return default_operating_points();
  try {
    return parse_operating_points(g.points);
  } catch (const std::exception &e) {
    throw InputError(std::string("--points: ") + e.what());
  }
}

PartitionSchema make_schema(const GlobalOptions &g, Track track) {
  PartitionSchema schema = PartitionSchema::for_track(track);
  if (g.schema != "auto") {
    schema.dimensions.clear();
    if (g.schema != "none") {
      std::stringstream ss(g.schema);
      std::string name;
      while (std::getline(ss, name, ',')) {
        auto d = parse_dimension(name);
        if (!d) throw InputError("--schema: unknown dimension '" + name + "'");
        if (!schema.has(*d)) schema.dimensions.push_back(*d);
      }
      std::sort(schema.dimensions.begin(), schema.dimensions.end());
    }
  }
  if (g.include_3seg) schema.drop_exclusion(PartitionSchema::multi_segment_enrollment().name);
  return schema;
}

Json schema_json(const PartitionSchema &schema) {
  Json dims = Json::array();
  for (Dimension d : schema.dimensions) dims.push_back(std::string(to_string(d)));
  Json excl = Json::array();
  for (const Exclusion &e : schema.exclusions) excl.push_back(e.name);
  return {{"track", std::string(to_string(schema.track))},
          {"dimensions", dims},
          {"exclusions", excl}};
}

Json points_json(std::span<const OperatingPoint> points) {
  Json out = Json::array();
  for (const OperatingPoint &p : points)
    out.push_back({{"c_miss", p.c_miss()}, {"c_fa", p.c_fa()}, {"p_target", p.p_target()}});
  return out;
}

// Collects output files and the manifest of one command.
class Run {
 public:
  Run(const GlobalOptions &g, std::string command, int argc, const char *const *argv)
      : dir_(g.out_dir) {
    manifest_.command = std::move(command);
    for (int i = 1; i < argc; ++i) manifest_.arguments.emplace_back(argv[i]);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw InputError("cannot create output directory '" + dir_.string() + "'");
  }

  void input(const std::string &path) { manifest_.add_input(path); }
  void seed(const std::string &name, std::uint64_t value) { manifest_.seeds[name] = value; }
  void config(const Json &j) { manifest_.config_json = j.dump(); }

  fs::path path(const std::string &name) {
    manifest_.outputs.push_back(name);
    return dir_ / name;
  }
  void write(const std::string &name, const std::string &text) {
    auto out = open_output(path(name));
    out << text;
  }
  template <typename F>
  void write_with(const std::string &name, F &&f) {
    auto out = open_output(path(name));
    f(out);
  }

  void finish() {
    manifest_.timestamp = utc_timestamp();
    auto out = open_output(dir_ / "manifest.json");
    out << manifest_.to_json();
  }

 private:
  fs::path dir_;
  RunManifest manifest_;
};

std::vector<TrialId> trial_ids(const TrialKey &key) {
  std::vector<TrialId> ids;
  ids.reserve(key.size());
  for (const TrialRecord &r : key.records()) ids.push_back(r.id);
  return ids;
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
  std::string key, scores;
};

int cmd_validate(const ValidateArgs &a, Run &run, std::ostream &out) {
  TrialKey key = load_key(a.key);
  ScoreScan scan = load("scores", a.scores, [](const std::string &x) { return scan_scores(x); });
  run.input(a.key);
  run.input(a.scores);
  ValidationReport report = validate_submission(scan, key);
  std::string json = to_json(report);
  run.write("validation.json", json);
  run.finish();
  out << json;
  return report.accepted() ? kExitOk : kExitEvaluation;
}

struct ScoreArgs {
  std::string key, scores;
};

int cmd_score(const ScoreArgs &a, const GlobalOptions &g, Run &run, std::ostream &out) {
  TrialKey key = load_key(a.key);
  ScoreSet scores = load_scores(a.scores);
  run.input(a.key);
  run.input(a.scores);
  PartitionSchema schema = make_schema(g, key.track());
  auto points = operating_points(g);
  run.config({{"schema", schema_json(schema)}, {"operating_points", points_json(points)}});
  CostReport report = actual_c_primary(scores, key, schema, points);
  run.write("cost_report.json", to_json(report, schema));
  run.write_with("cost_report.tsv", [&](std::ostream &o) { write_cost_tsv(report, o); });
  run.finish();
  out << "actual_c_primary\t" << format_double(report.actual_c_primary) << "\n"
      << "min_c_primary\t" << format_double(report.min_c_primary) << "\n"
      << "cells\t" << report.per_cell.size() << "\n";
  return kExitOk;
}

struct DetArgs {
  std::string key, scores;
  std::string split_by;
};

int cmd_det(const DetArgs &a, const GlobalOptions &g, Run &run, std::ostream &out) {
  TrialKey key = load_key(a.key);
  ScoreSet scores = load_scores(a.scores);
  run.input(a.key);
  run.input(a.scores);
  PartitionSchema schema = make_schema(g, key.track());
  std::optional<Dimension> split;
  if (!a.split_by.empty()) {
    split = parse_dimension(a.split_by);
    if (!split) throw InputError("--split-by: unknown dimension '" + a.split_by + "'");
  }
  run.config({{"schema", schema_json(schema)}, {"split_by", a.split_by}});

  const std::vector<ScoredTrial> trials = join_scores(scores, key);
  Json curves = Json::array();
  auto emit = [&](const std::string &name, std::span<const ScoredTrial> subset,
                  const PartitionSchema &s) {
    PartitionedScores data(subset, s);
    if (data.empty()) throw EvaluationError("DET '" + name + "': no participating cell");
    DetCurve curve = det_points(data);
    std::string file = "det_" + name + ".tsv";
    run.write_with(file, [&](std::ostream &o) { write_det(curve, o); });
    curves.push_back({{"name", name},
                      {"file", file},
                      {"cells", data.cells().size()},
                      {"points", curve.points.size()},
                      {"eer", eer(curve)}});
    out << name << "\teer\t" << format_double(eer(curve)) << "\n";
  };

  emit("all", trials, schema);
  if (split) {
    PartitionSchema sub = schema;
    sub.dimensions.erase(std::remove(sub.dimensions.begin(), sub.dimensions.end(), *split),
                         sub.dimensions.end());
    PartitionSchema probe = schema;
    probe.dimensions = {*split};
    std::map<CellKey, std::vector<ScoredTrial>> groups;
    for (const ScoredTrial &t : trials)
      if (auto cell = cell_of(t.meta, probe)) groups[*cell].push_back(t);
    for (const auto &[cell, subset] : groups) {
      std::string name = cell.label();
      std::replace(name.begin(), name.end(), '=', '-');
      emit(name, subset, sub);
    }
  }
  run.write("det_summary.json",
            Json{{"format", "sre-det-summary"}, {"version", 1}, {"curves", curves}}.dump(2) + "\n");
  run.finish();
  return kExitOk;
}

struct BootstrapArgs {
  std::string key, scores;
  std::size_t replicates = 1000;
  double level = 0.95;
  std::string metric = "actual";
  std::string unit = "models";
  unsigned threads = 0;
};

int cmd_bootstrap(const BootstrapArgs &a, const GlobalOptions &g, Run &run, std::ostream &out) {
  const std::uint64_t seed = require_seed(g, "bootstrap");
  TrialKey key = load_key(a.key);
  ScoreSet scores = load_scores(a.scores);
  run.input(a.key);
  run.input(a.scores);
  PartitionSchema schema = make_schema(g, key.track());
  BootstrapOptions o;
  o.seed = seed;
  o.n_replicates = a.replicates;
  o.level = a.level;
  o.points = operating_points(g);
  o.threads = a.threads;
  if (a.metric == "actual")
    o.metric = CostKind::kActual;
  else if (a.metric == "min")
    o.metric = CostKind::kMin;
  else
    throw InputError("--metric must be 'actual' or 'min'");
  if (a.unit == "models")
    o.unit = ResampleUnit::kModels;
  else if (a.unit == "models+segments")
    o.unit = ResampleUnit::kModelsAndSegments;
  else
    throw InputError("--unit must be 'models' or 'models+segments'");
  run.seed("bootstrap", seed);
  run.config({{"schema", schema_json(schema)},
              {"operating_points", points_json(o.points)},
              {"replicates", o.n_replicates},
              {"level", o.level},
              {"metric", a.metric},
              {"unit", a.unit}});
  ConfidenceInterval ci = bootstrap_ci(scores, key, schema, o);
  CostReport report = actual_c_primary(scores, key, schema, o.points);
  run.write("bootstrap.json", to_json(report, schema, ci));
  run.finish();
  out << "point_estimate\t" << format_double(ci.point_estimate) << "\n"
      << "lower\t" << format_double(ci.lower) << "\n"
      << "upper\t" << format_double(ci.upper) << "\n";
  return kExitOk;
}

struct BackendFitArgs {
  std::string train, indomain;
  std::string scoring = "plda";
  std::size_t lda_dim = backend::kDefaultLdaDim;
  double alpha = 0.5;
  bool snorm = false;
  std::size_t top_k = backend::kDefaultSnormTopK;
};

int cmd_backend_fit(const BackendFitArgs &a, Run &run, std::ostream &out) {
  EmbeddingTable train = load_table(a.train);
  run.input(a.train);
  std::optional<EmbeddingTable> indomain;
  if (!a.indomain.empty()) {
    indomain = load_table(a.indomain);
    run.input(a.indomain);
  }
  backend::BackendConfig config;
  auto method = backend::parse_scoring_method(a.scoring);
  if (!method) throw InputError("--scoring must be 'plda' or 'cosine'");
  config.scoring = *method;
  config.lda_dim = a.lda_dim;
  config.map_alpha = a.alpha;
  config.snorm = a.snorm;
  config.snorm_top_k = a.top_k;
  run.config({{"scoring", a.scoring},
              {"lda_dim", a.lda_dim},
              {"map_alpha", a.alpha},
              {"snorm", a.snorm},
              {"snorm_top_k", a.top_k}});
  backend::BackendModel model;
  try {
    model = backend::fit_backend(train, indomain, config);
  } catch (const std::invalid_argument &e) {
    throw EvaluationError(std::string("backend fit: ") + e.what());
  }
  run.write("model.json", backend::model_to_json(model));
  run.finish();
  out << "input_dim\t" << model.input_dim() << "\n"
      << "output_dim\t" << model.output_dim() << "\n"
      << "em_iterations\t" << (model.plda_log_likelihood.size() - 1) << "\n";
  return kExitOk;
}

struct BackendScoreArgs {
  std::string model, embeddings, enrollment, trials, cohort, calibration;
};

int cmd_backend_score(const BackendScoreArgs &a, Run &run, std::ostream &out) {
  backend::BackendModel model = load("model", a.model, [](const std::string &x) {
    return backend::load_model(x);
  });
  EmbeddingTable emb = load_table(a.embeddings);
  EnrollmentMap enroll = load_enrollment(a.enrollment);
  TrialKey key = load_key(a.trials);
  for (const std::string &p : {a.model, a.embeddings, a.enrollment, a.trials}) run.input(p);
  std::optional<EmbeddingTable> cohort;
  if (!a.cohort.empty()) {
    cohort = load_table(a.cohort);
    run.input(a.cohort);
  }
  std::optional<backend::CalibrationMap> cal;
  if (!a.calibration.empty()) {
    cal = load("calibration", a.calibration,
               [](const std::string &x) { return backend::load_calibration(x); });
    run.input(a.calibration);
  }
  backend::ScoringInputs in;
  in.embeddings = &emb;
  in.enrollment = &enroll;
  in.cohort = cohort ? &*cohort : nullptr;
  in.calibration = cal ? &*cal : nullptr;
  std::vector<TrialId> ids = trial_ids(key);
  ScoreSet scores;
  try {
    scores = backend::score_trials(model, ids, in);
  } catch (const std::invalid_argument &e) {
    throw InputError(std::string("backend score: ") + e.what());
  }
  run.write_with("scores.tsv", [&](std::ostream &o) { write_scores(scores, o); });
  run.finish();
  out << "trials\t" << scores.size() << "\n";
  return kExitOk;
}

struct CalibrateArgs {
  std::string key, scores;
  std::optional<double> prior;
};

int cmd_backend_calibrate(const CalibrateArgs &a, const GlobalOptions &g, Run &run,
                          std::ostream &out, std::ostream &err) {
  TrialKey key = load_key(a.key);
  ScoreSet scores = load_scores(a.scores);
  run.input(a.key);
  run.input(a.scores);
  auto points = operating_points(g);
  const double prior = a.prior ? *a.prior : backend::default_effective_prior(points);
  run.config({{"effective_prior", prior}, {"operating_points", points_json(points)}});
  std::vector<backend::LabeledScore> data = backend::labeled_scores(scores, key);
  backend::CalibrationMap map;
  try {
    map = backend::fit_calibration(data, prior);
  } catch (const std::invalid_argument &e) {
    throw EvaluationError(std::string("calibration: ") + e.what());
  }
  if (!map.order_preserving())
    err << "warning: calibration scale a = " << format_double(map.a)
        << " is not positive; the map does not preserve score order\n";
  if (map.separable) err << "warning: calibration data are separable; iteration was capped\n";
  run.write("calibration.json", backend::calibration_to_json(map));
  run.write_with("scores_calibrated.tsv", [&](std::ostream &o) { write_scores(map.apply(scores), o); });
  run.finish();
  out << "a\t" << format_double(map.a) << "\nb\t" << format_double(map.b) << "\n";
  return kExitOk;
}

struct FuseArgs {
  std::vector<std::string> scores;
  std::vector<double> weights;
  double offset = 0.0;
};

int cmd_backend_fuse(const FuseArgs &a, Run &run, std::ostream &out) {
  std::vector<ScoreSet> sets;
  for (const std::string &p : a.scores) {
    sets.push_back(load_scores(p));
    run.input(p);
  }
  std::vector<double> weights = a.weights;
  if (weights.empty()) weights.assign(sets.size(), 1.0 / static_cast<double>(sets.size()));
  run.config({{"weights", weights}, {"offset", a.offset}});
  ScoreSet fused;
  try {
    fused = backend::fuse(sets, weights, a.offset);
  } catch (const std::invalid_argument &e) {
    throw InputError(std::string("fuse: ") + e.what());
  }
  run.write_with("scores_fused.tsv", [&](std::ostream &o) { write_scores(fused, o); });
  run.finish();
  out << "trials\t" << fused.size() << "\n";
  return kExitOk;
}

struct VisualArgs {
  std::string images, enrollment, frames, trials;
  std::size_t k = visual::kDefaultK;
  std::size_t restarts = visual::kDefaultRestarts;
};

int cmd_visual_score(const VisualArgs &a, const GlobalOptions &g, Run &run, std::ostream &out) {
  const std::uint64_t seed = require_seed(g, "visual score");
  EmbeddingTable images = load_table(a.images);
  EnrollmentMap enroll = load_enrollment(a.enrollment);
  EmbeddingTable frames = load_table(a.frames);
  TrialKey key = load_key(a.trials);
  for (const std::string &p : {a.images, a.enrollment, a.frames, a.trials}) run.input(p);
  run.seed("visual", seed);
  run.config({{"k", a.k}, {"restarts", a.restarts}});
  if (frames.dim() != images.dim())
    throw InputError("frame encodings and enrollment images differ in dimension");

  std::map<std::string, visual::FrameEncodings> videos;
  try {
    videos = visual::group_frames(frames);
  } catch (const std::invalid_argument &e) {
    throw InputError(std::string("frames: ") + e.what());
  }
  std::map<std::string, visual::PseudoEncodings> pseudo;
  std::map<std::string, std::vector<double>> enrolled;
  std::vector<std::string> empty_videos;
  std::vector<ScoreEntry> entries;
  for (const TrialRecord &r : key.records()) {
    auto e = enrolled.find(r.id.model_id);
    if (e == enrolled.end()) {
      auto m = enroll.find(r.id.model_id);
      if (m == enroll.end() || m->second.empty())
        throw InputError("no enrollment image for model '" + r.id.model_id + "'");
      std::vector<double> mean(images.dim(), 0.0);
      for (const std::string &img : m->second) {
        const EmbeddingRow *row = images.find(img);
        if (!row) throw InputError("no encoding for enrollment image '" + img + "'");
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += row->vector[i];
      }
      for (double &v : mean) v /= static_cast<double>(m->second.size());
      e = enrolled.emplace(r.id.model_id, std::move(mean)).first;
    }
    auto p = pseudo.find(r.id.segment_id);
    if (p == pseudo.end()) {
      auto v = videos.find(r.id.segment_id);
      visual::PseudoEncodings pe;
      if (v == videos.end()) {
        empty_videos.push_back(r.id.segment_id);
      } else {
        std::size_t k = std::min(a.k, v->second.encodings.size());
        pe = visual::kmeanspp_cluster(v->second.encodings, k,
                                      visual::video_seed(seed, r.id.segment_id), a.restarts);
      }
      p = pseudo.emplace(r.id.segment_id, std::move(pe)).first;
    }
    entries.push_back({r.id, visual::video_trial_score(e->second, p->second).score});
  }
  ScoreSet scores(std::move(entries));
  run.write_with("scores.tsv", [&](std::ostream &o) { write_scores(scores, o); });
  run.write("visual_report.json",
            Json{{"format", "sre-visual-report"},
                 {"version", 1},
                 {"videos", pseudo.size()},
                 {"empty_videos", empty_videos},
                 {"empty_video_score", visual::kEmptyVideoScore}}
                    .dump(2) + "\n");
  run.finish();
  out << "trials\t" << scores.size() << "\nempty_videos\t" << empty_videos.size() << "\n";
  return kExitOk;
}

struct SynthArgs {
  std::string config;
};

int cmd_synth(const SynthArgs &a, const GlobalOptions &g, Run &run, std::ostream &out,
              std::ostream &err) {
  const std::uint64_t seed = require_seed(g, "synth");
  synth::SynthConfig config;
  if (!a.config.empty()) {
    config = load("synth config", a.config,
                  [](const std::string &x) { return synth::config_from_json(read_file(x)); });
    run.input(a.config);
  }
  config.seed = seed;
  run.seed("synth", seed);
  run.config(Json::parse(synth::config_to_json(config)));

  const synth::World world = synth::build_world(config);
  const std::uint64_t score_seed = derive_seed(seed, tag_hash("scores"));
  const std::uint64_t emb_seed = derive_seed(seed, tag_hash("embeddings"));
  const std::uint64_t face_seed = derive_seed(seed, tag_hash("faces"));

  struct TrackFiles {
    Track track;
    const char *suffix;
  };
  Json cells = Json::object();
  for (TrackFiles t : {TrackFiles{Track::kAudio, "audio"}, TrackFiles{Track::kVisual, "visual"},
                       TrackFiles{Track::kAudioVisual, "audio_visual"}}) {
    TrialKey key = synth::generate_key(world, t.track);
    ScoreSet scores = synth::generate_scores(key, config, score_seed);
    run.write_with(std::string("key_") + t.suffix + ".tsv", [&](std::ostream &o) { write_key(key, o); });
    run.write_with(std::string("scores_") + t.suffix + ".tsv",
                   [&](std::ostream &o) { write_scores(scores, o); });
    if (t.track == Track::kAudio) {
      auto empty = synth::empty_required_cells(key);
      for (const std::string &c : empty) err << "warning: synthetic key has no targets in " << c << "\n";
      cells["empty_required_cells"] = empty;
      cells["audio_trials"] = key.size();
      cells["audio_targets"] = key.num_targets();
    }
  }
  run.write_with("enrollment.tsv", [&](std::ostream &o) {
    write_enrollment(synth::generate_enrollment(world, Track::kAudio), o);
  });
  run.write_with("enrollment_visual.tsv", [&](std::ostream &o) {
    write_enrollment(synth::generate_enrollment(world, Track::kVisual), o);
  });
  run.write_with("embeddings_eval.tsv", [&](std::ostream &o) {
    write_embeddings(synth::generate_embeddings(config, emb_seed), o);
  });
  run.write_with("embeddings_train.tsv", [&](std::ostream &o) {
    write_embeddings(synth::generate_train_embeddings(config, emb_seed), o);
  });
  run.write_with("embeddings_dev.tsv", [&](std::ostream &o) {
    write_embeddings(synth::generate_dev_embeddings(config, emb_seed), o);
  });
  run.write_with("frames.tsv", [&](std::ostream &o) {
    write_embeddings(synth::generate_frames(config, face_seed), o);
  });
  run.write_with("face_images.tsv", [&](std::ostream &o) {
    write_embeddings(synth::generate_face_images(config, face_seed), o);
  });
  run.write("synth_report.json", Json{{"format", "sre-synth-report"},
                                      {"version", 1},
                                      {"speakers", world.speakers.size()},
                                      {"segments", world.segments.size()},
                                      {"models", world.models.size()},
                                      {"audit", cells}}
                                         .dump(2) + "\n");
  run.finish();
  out << "speakers\t" << world.speakers.size() << "\naudio_trials\t"
      << cells["audio_trials"].get<std::size_t>() << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Speaker and face recognition evaluation toolkit", "sre-eval"};
  app.set_version_flag("--version", std::string(sre::version()));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed (required by bootstrap, visual score, synth)");
  app.add_option("--schema", g.schema,
                 "Partition dimensions: auto (by track), none, or a comma list of "
                 "gender,source_match,language_match,phone_match");
  app.add_option("--points", g.points, "Operating points 'c_miss,c_fa,p_target;...'");
  app.add_option("--out-dir", g.out_dir, "Directory for result files and manifest.json");
  app.add_flag("--include-3seg", g.include_3seg, "Keep 3-segment enrollment trials");

  std::function<int(Run &)> action;
  std::string command;
  auto bind = [&](CLI::App *sub, std::string name, std::function<int(Run &)> f) {
    sub->callback([&, name, f] {
      command = name;
      action = f;
    });
  };

  ValidateArgs va;
  auto *validate = app.add_subcommand("validate", "Check a score file against a trial key");
  validate->add_option("--key", va.key)->required();
  validate->add_option("--scores", va.scores)->required();
  bind(validate, "validate", [&](Run &r) { return cmd_validate(va, r, out); });

  ScoreArgs sa;
  auto *score = app.add_subcommand("score", "Actual and minimum C_primary");
  score->add_option("--key", sa.key)->required();
  score->add_option("--scores", sa.scores)->required();
  bind(score, "score", [&](Run &r) { return cmd_score(sa, g, r, out); });

  DetArgs da;
  auto *det = app.add_subcommand("det", "Equalized DET curves");
  det->add_option("--key", da.key)->required();
  det->add_option("--scores", da.scores)->required();
  det->add_option("--split-by", da.split_by, "Also draw one curve per value of this dimension");
  bind(det, "det", [&](Run &r) { return cmd_det(da, g, r, out); });

  BootstrapArgs ba;
  auto *boot = app.add_subcommand("bootstrap", "Bootstrap confidence interval of C_primary");
  boot->add_option("--key", ba.key)->required();
  boot->add_option("--scores", ba.scores)->required();
  boot->add_option("--replicates", ba.replicates);
  boot->add_option("--level", ba.level);
  boot->add_option("--metric", ba.metric, "actual or min");
  boot->add_option("--unit", ba.unit, "models or models+segments");
  boot->add_option("--threads", ba.threads, "0 = hardware concurrency");
  bind(boot, "bootstrap", [&](Run &r) { return cmd_bootstrap(ba, g, r, out); });

  auto *backend_cmd = app.add_subcommand("backend", "Embedding back-end");
  backend_cmd->require_subcommand(1);
  BackendFitArgs bfa;
  auto *fit = backend_cmd->add_subcommand("fit", "Fit whitening, LDA and PLDA");
  fit->add_option("--train", bfa.train)->required();
  fit->add_option("--indomain", bfa.indomain, "In-domain set for whitening and MAP adaptation");
  fit->add_option("--scoring", bfa.scoring, "plda or cosine");
  fit->add_option("--lda-dim", bfa.lda_dim, "0 disables LDA");
  fit->add_option("--alpha", bfa.alpha, "MAP adaptation weight");
  fit->add_flag("--snorm", bfa.snorm, "Adaptive s-norm at scoring time");
  fit->add_option("--top-k", bfa.top_k, "s-norm cohort size");
  bind(fit, "backend fit", [&](Run &r) { return cmd_backend_fit(bfa, r, out); });

  BackendScoreArgs bsa;
  auto *bscore = backend_cmd->add_subcommand("score", "Score trials with a fitted back-end");
  bscore->add_option("--model", bsa.model)->required();
  bscore->add_option("--embeddings", bsa.embeddings)->required();
  bscore->add_option("--enrollment", bsa.enrollment)->required();
  bscore->add_option("--trials", bsa.trials, "Trial key")->required();
  bscore->add_option("--cohort", bsa.cohort);
  bscore->add_option("--calibration", bsa.calibration);
  bind(bscore, "backend score", [&](Run &r) { return cmd_backend_score(bsa, r, out); });

  CalibrateArgs ca;
  auto *cal = backend_cmd->add_subcommand("calibrate", "Fit a logistic calibration map");
  cal->add_option("--key", ca.key)->required();
  cal->add_option("--scores", ca.scores)->required();
  cal->add_option("--prior", ca.prior, "Effective prior (default from operating points)");
  bind(cal, "backend calibrate", [&](Run &r) { return cmd_backend_calibrate(ca, g, r, out, err); });

  FuseArgs fa;
  auto *fuse = backend_cmd->add_subcommand("fuse", "Affine score-level fusion");
  fuse->add_option("--scores", fa.scores)->required();
  fuse->add_option("--weights", fa.weights)->delimiter(',');
  fuse->add_option("--offset", fa.offset);
  bind(fuse, "backend fuse", [&](Run &r) { return cmd_backend_fuse(fa, r, out); });

  auto *visual_cmd = app.add_subcommand("visual", "Face-video scoring");
  visual_cmd->require_subcommand(1);
  VisualArgs vsa;
  auto *vscore = visual_cmd->add_subcommand("score", "k-means++ max-cosine video scores");
  vscore->add_option("--images", vsa.images, "Enrollment image encodings")->required();
  vscore->add_option("--enrollment", vsa.enrollment)->required();
  vscore->add_option("--frames", vsa.frames, "Frame encodings, video id in the speaker column")
      ->required();
  vscore->add_option("--trials", vsa.trials, "Trial key")->required();
  vscore->add_option("--k", vsa.k);
  vscore->add_option("--restarts", vsa.restarts);
  bind(vscore, "visual score", [&](Run &r) { return cmd_visual_score(vsa, g, r, out); });

  SynthArgs ya;
  auto *synth_cmd = app.add_subcommand("synth", "Generate a synthetic evaluation");
  synth_cmd->add_option("--config", ya.config, "JSON configuration (defaults if omitted)");
  bind(synth_cmd, "synth", [&](Run &r) { return cmd_synth(ya, g, r, out, err); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitInput;
  }
  if (!action) {
    err << "error: no command\n";
    return kExitInput;
  }

  try {
    Run run(g, command, argc, argv);
    return action(run);
  } catch (const ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const EvaluationError &e) {
    err << "error: " << e.what() << "\n";
    return kExitEvaluation;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitEvaluation;
  }
}

}  // namespace sre::cli
