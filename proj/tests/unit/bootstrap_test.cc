// tests/unit/bootstrap_test.cc

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


#include <gtest/gtest.h>

#include "generators.h"
#include "sre/det.h"
#include "sre/synth.h"

namespace sre {
namespace {

using testing::Gen;

TEST(Quantile, NearestRank) {
  std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(nearest_rank_quantile(v, 0.025), 1.0);
  EXPECT_EQ(nearest_rank_quantile(v, 0.5), 5.0);
  EXPECT_EQ(nearest_rank_quantile(v, 0.975), 10.0);
}

struct Fixture {
  TrialKey key;
  ScoreSet scores;
};

Fixture small_synth() {
  synth::SynthConfig config;
  config.n_speakers = 20;
  config.male_fraction = 0.25;
  config.seed = 4;
  Fixture f;
  f.key = synth::generate_key(config);
  f.scores = synth::generate_scores(f.key, config, 4);
  return f;
}

TEST(Bootstrap, SameSeedSameInterval) {
  Fixture f = small_synth();
  BootstrapOptions o;
  o.n_replicates = 100;
  o.seed = 17;
  auto schema = PartitionSchema::for_track(Track::kAudio);
  ConfidenceInterval a = bootstrap_ci(f.scores, f.key, schema, o);
  ConfidenceInterval b = bootstrap_ci(f.scores, f.key, schema, o);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_LE(a.lower, a.upper);
  o.seed = 18;
  ConfidenceInterval c = bootstrap_ci(f.scores, f.key, schema, o);
  EXPECT_TRUE(c.lower != a.lower || c.upper != a.upper);
}

TEST(Bootstrap, ThreadCountDoesNotMatter) {
  Fixture f = small_synth();
  BootstrapOptions o;
  o.n_replicates = 64;
  o.seed = 5;
  o.unit = ResampleUnit::kModelsAndSegments;
  auto schema = PartitionSchema::for_track(Track::kAudio);
  o.threads = 1;
  auto one = bootstrap_replicates(f.scores, f.key, schema, o);
  o.threads = 4;
  EXPECT_EQ(bootstrap_replicates(f.scores, f.key, schema, o), one);
}

TEST(Bootstrap, SingleModelGivesZeroWidth) {
  std::vector<TrialRecord> rec;
  std::vector<ScoreEntry> sc;
  for (int i = 0; i < 6; ++i) {
    TrialRecord r;
    r.id = {"only", "s" + std::to_string(i)};
    r.meta.label = i < 2 ? Label::kTarget : Label::kNontarget;
    rec.push_back(r);
    sc.push_back({r.id, static_cast<double>(i % 3)});
  }
  TrialKey key(Track::kAudio, rec);
  ScoreSet scores(sc);
  BootstrapOptions o;
  o.n_replicates = 50;
  o.seed = 1;
  auto schema = testing::single_cell_schema();
  ConfidenceInterval ci = bootstrap_ci(scores, key, schema, o);
  EXPECT_EQ(ci.lower, ci.upper);
  EXPECT_EQ(ci.lower, ci.point_estimate);
}

TEST(Bootstrap, OneReplicate) {
  Fixture f = small_synth();
  BootstrapOptions o;
  o.n_replicates = 1;
  o.seed = 9;
  auto schema = PartitionSchema::for_track(Track::kAudio);
  auto reps = bootstrap_replicates(f.scores, f.key, schema, o);
  ASSERT_EQ(reps.size(), 1u);
  ConfidenceInterval ci = bootstrap_ci(f.scores, f.key, schema, o);
  EXPECT_EQ(ci.lower, reps[0]);
  EXPECT_EQ(ci.upper, reps[0]);
}

TEST(Bootstrap, WellSeparatedContainsEstimate) {
  Fixture f = small_synth();
  BootstrapOptions o;
  o.n_replicates = 300;
  o.seed = 2;
  o.metric = CostKind::kMin;
  ConfidenceInterval ci =
      bootstrap_ci(f.scores, f.key, PartitionSchema::for_track(Track::kAudio), o);
  EXPECT_LE(ci.lower, ci.point_estimate);
  EXPECT_GE(ci.upper, ci.point_estimate);
}

TEST(Bootstrap, TooManyDegenerateReplicates) {
  // Two models, one with the only target: most replicates lose every cell.
  std::vector<TrialRecord> rec;
  std::vector<ScoreEntry> sc;
  for (int m = 0; m < 8; ++m)
    for (int i = 0; i < 2; ++i) {
      TrialRecord r;
      r.id = {"m" + std::to_string(m), "s" + std::to_string(i)};
      r.meta.label = (m == 0 && i == 0) ? Label::kTarget : Label::kNontarget;
      rec.push_back(r);
      sc.push_back({r.id, static_cast<double>(i)});
    }
  BootstrapOptions o;
  o.n_replicates = 200;
  o.seed = 3;
  EXPECT_THROW(bootstrap_ci(ScoreSet(sc), TrialKey(Track::kAudio, rec),
                            testing::single_cell_schema(), o),
               EvaluationError);
}

}  // namespace
}  // namespace sre
