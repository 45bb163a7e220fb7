// tests/unit/metrics_test.cc

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


#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "generators.h"
#include "oracles.h"
#include "sre/metrics.h"
#include "sre/synth.h"

namespace sre {
namespace {

using testing::Gen;
using testing::simple_set;
using testing::single_cell_schema;

TEST(OperatingPoint, BetaAndThreshold) {
  EXPECT_DOUBLE_EQ(beta(1, 1, 0.01), 99.0);
  EXPECT_DOUBLE_EQ(beta(1, 1, 0.05), 19.0);
  EXPECT_DOUBLE_EQ(beta(1, 1, 0.5), 1.0);
  EXPECT_NEAR(OperatingPoint(1, 1, 0.01).threshold(), 4.59512, 5e-6);
  EXPECT_NEAR(OperatingPoint(1, 1, 0.05).threshold(), 2.94444, 5e-6);
  EXPECT_EQ(OperatingPoint(1, 1, 0.5).threshold(), 0.0);
  EXPECT_THROW(beta(0, 1, 0.5), std::invalid_argument);
  EXPECT_THROW(beta(1, 1, 1.0), std::invalid_argument);
}

TEST(OperatingPoint, ParseList) {
  auto pts = parse_operating_points("1,1,0.01;1,1,0.05");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts, default_operating_points());
  EXPECT_THROW(parse_operating_points("1,1"), std::invalid_argument);
}

TEST(CNorm, Examples) {
  OperatingPoint p19(1, 1, 0.05), p99(1, 1, 0.01);
  EXPECT_EQ(c_norm(0, 0, p19), 0.0);
  EXPECT_DOUBLE_EQ(c_norm(0.1, 0.02, p19), 0.48);
  EXPECT_DOUBLE_EQ(c_norm(0, 1, p99), 99.0);
}

TEST(ErrorRates, DirectCount) {
  auto set = simple_set({2.0, -1.0}, {0.5, -3.0});
  auto schema = single_cell_schema();
  auto w = equalization_weights(set.key, schema);
  ErrorRates r = error_rates(set.scores, set.key, 0.0, w);
  EXPECT_EQ(r.p_miss, 0.5);
  EXPECT_EQ(r.p_fa, 0.5);
  ErrorRates all_below = error_rates(set.scores, set.key, 10.0, w);
  EXPECT_EQ(all_below.p_miss, 1.0);
  EXPECT_EQ(all_below.p_fa, 0.0);
}

TEST(ErrorRates, MatchesPartitionedCounts) {
  Gen g(21);
  for (int rep = 0; rep < 20; ++rep) {
    TrialKey key = g.audio_key(200);
    ScoreSet scores = g.scores_for(key);
    auto schema = PartitionSchema::for_track(Track::kAudio);
    auto w = equalization_weights(key, schema);
    auto trials = join_scores(scores, key);
    PartitionedScores data(trials, schema);
    for (double theta : {-3.0, 0.0, 0.5, 2.25}) {
      ErrorRates a = error_rates(scores, key, theta, w);
      ErrorRates b = data.rates_at(theta);
      EXPECT_NEAR(a.p_miss, b.p_miss, 1e-12);
      EXPECT_NEAR(a.p_fa, b.p_fa, 1e-12);
    }
  }
}

TEST(Cost, WorkedFourTrialExample) {
  auto set = simple_set({5.0, 3.5}, {4.0, 0.0});
  auto points = default_operating_points();
  CostReport r = actual_c_primary(set.scores, set.key, single_cell_schema(), points);
  EXPECT_EQ(r.per_point[0].actual_c_norm, 0.5);
  EXPECT_EQ(r.per_point[1].actual_c_norm, 9.5);
  EXPECT_EQ(r.actual_c_primary, 5.0);
  EXPECT_EQ(r.per_point[0].min_c_norm, 0.5);
  EXPECT_EQ(r.per_point[1].min_c_norm, 0.5);
  EXPECT_EQ(r.min_c_primary, 0.5);
  EXPECT_GT(r.per_point[0].min_threshold, 4.0);
  EXPECT_LT(r.per_point[0].min_threshold, 5.0);
}

TEST(Cost, PerfectSeparationIsFree) {
  auto set = simple_set({5.0, 6.0, 9.0}, {1.0, -2.0, 2.8});
  CostReport r = min_c_primary(set.scores, set.key, single_cell_schema(),
                               default_operating_points());
  EXPECT_EQ(r.actual_c_primary, 0.0);
  EXPECT_EQ(r.min_c_primary, 0.0);
}

TEST(Cost, NoParticipatingCellIsAnError) {
  auto set = simple_set({1.0}, {});
  EXPECT_THROW(min_c_primary(set.scores, set.key, single_cell_schema(),
                             default_operating_points()),
               EvaluationError);
}

TEST(Cost, MinMatchesBruteForce) {
  Gen g(1);
  auto points = default_operating_points();
  for (int rep = 0; rep < 30; ++rep) {
    TrialKey key = g.audio_key(500);
    ScoreSet scores = g.scores_for(key, g.uniform(0, 3));
    for (const PartitionSchema &schema :
         {PartitionSchema::for_track(Track::kAudio), single_cell_schema()}) {
      auto trials = join_scores(scores, key);
      CostReport r = min_c_primary(scores, key, schema, points);
      EXPECT_EQ(r.min_c_primary, testing::brute_force_min_c_primary(trials, schema, points));
      EXPECT_NEAR(r.actual_c_primary,
                  testing::per_cell_actual_c_primary(trials, schema, points), 1e-12);
      EXPECT_LE(r.min_c_primary, r.actual_c_primary);
    }
  }
}

TEST(Cost, SingleCellEqualsPooled) {
  Gen g(2);
  for (int rep = 0; rep < 20; ++rep) {
    TrialKey key = g.audio_key(300);
    ScoreSet scores = g.scores_for(key);
    auto trials = join_scores(scores, key);
    CostReport r = min_c_primary(scores, key, single_cell_schema(), default_operating_points());
    for (const PointCost &pc : r.per_point)
      EXPECT_EQ(pc.actual_c_norm,
                testing::pooled_c_norm(trials, pc.point.threshold(), pc.point.beta()));
  }
}

TEST(Cost, DuplicationInvariant) {
  Gen g(3);
  auto points = default_operating_points();
  auto schema = PartitionSchema::for_track(Track::kAudio);
  for (int rep = 0; rep < 10; ++rep) {
    TrialKey key = g.audio_key(300);
    auto trials = join_scores(g.scores_for(key), key);
    CostReport base = evaluate(PartitionedScores(trials, schema), points);
    for (int k = 2; k <= 4; ++k) {
      std::vector<ScoredTrial> dup;
      for (int c = 0; c < k; ++c) dup.insert(dup.end(), trials.begin(), trials.end());
      CostReport r = evaluate(PartitionedScores(dup, schema), points);
      EXPECT_EQ(r.actual_c_primary, base.actual_c_primary);
      EXPECT_EQ(r.min_c_primary, base.min_c_primary);
    }
  }
}

TEST(Cost, MonotoneTransformInvariant) {
  Gen g(4);
  auto points = default_operating_points();
  auto schema = PartitionSchema::for_track(Track::kAudio);
  TrialKey key = g.audio_key(800);
  ScoreSet scores = g.scores_for(key);
  double base = min_c_primary(scores, key, schema, points).min_c_primary;
  std::vector<std::function<double(double)>> transforms{
      [](double x) { return 3.0 * x - 7.0; },
      [](double x) { return std::exp(x / 4.0); },
      [](double x) { return x * x * x + x; },
      [](double x) { return std::sinh(x / 2.0); },
  };
  for (auto &f : transforms) {
    std::vector<ScoreEntry> e;
    for (const ScoreEntry &s : scores.entries()) e.push_back({s.id, f(s.llr)});
    EXPECT_EQ(min_c_primary(ScoreSet(e), key, schema, points).min_c_primary, base);
  }
}

TEST(Weights, TwoCellsProportional) {
  std::vector<TrialRecord> rec;
  auto add = [&](const std::string &m, int i, bool target, Gender gender) {
    TrialRecord r;
    r.id = {m, "s" + std::to_string(i)};
    r.meta.label = target ? Label::kTarget : Label::kNontarget;
    r.meta.gender = gender;
    rec.push_back(r);
  };
  for (int i = 0; i < 10; ++i) add("a", i, true, Gender::kMale);
  for (int i = 0; i < 30; ++i) add("b", i, true, Gender::kFemale);
  for (int i = 0; i < 5; ++i) add("c", i, false, Gender::kMale);
  for (int i = 0; i < 7; ++i) add("d", i, false, Gender::kFemale);
  TrialKey key(Track::kAudio, rec);
  PartitionSchema schema;
  schema.dimensions = {Dimension::kGender};
  auto w = equalization_weights(key, schema);
  EXPECT_NEAR(*w.of({"a", "s0"}), 1.0 / 20.0, 1e-15);
  EXPECT_NEAR(*w.of({"b", "s0"}), 1.0 / 60.0, 1e-15);
  EXPECT_NEAR(*w.of({"c", "s0"}), 1.0 / 10.0, 1e-15);
  EXPECT_NEAR(*w.of({"d", "s0"}), 1.0 / 14.0, 1e-15);
}

TEST(Weights, SingleCellUniform) {
  auto set = simple_set({1, 2, 3}, {0, 1});
  auto w = equalization_weights(set.key, single_cell_schema());
  for (const TrialRecord &r : set.key.records())
    EXPECT_DOUBLE_EQ(*w.of(r.id), r.meta.is_target() ? 1.0 / 3 : 0.5);
}

// Target mass is 1/C in every cell; a non-target pool carries m_p/C, where
// m_p counts the target cells paired with it.
TEST(Weights, MassPerCellOnSyntheticKey) {
  synth::SynthConfig config;
  config.seed = 8;
  TrialKey key = synth::generate_key(config);
  auto schema = PartitionSchema::for_track(Track::kAudio);
  auto w = equalization_weights(key, schema);
  std::vector<ScoredTrial> trials;
  for (const TrialRecord &r : key.records()) trials.push_back({0.0, r.meta});
  PartitionedScores data(trials, schema);
  const double C = static_cast<double>(data.cells().size());
  std::map<CellKey, double> tmass, nmass;
  for (const TrialRecord &r : key.records()) {
    auto c = cell_of(r.meta, schema);
    auto wt = w.of(r.id);
    if (!c || !wt) continue;
    (r.meta.is_target() ? tmass[*c] : nmass[pool_of(*c)]) += *wt;
  }
  for (const TargetCell &cell : data.cells()) EXPECT_NEAR(tmass[cell.key], 1.0 / C, 1e-12);
  for (const NontargetPool &pool : data.pools())
    EXPECT_NEAR(nmass[pool.key], static_cast<double>(pool.multiplicity) / C, 1e-12);
}

TEST(Partition, ThreeSegmentExcludedByDefault) {
  Gen g(5);
  TrialKey key = g.audio_key(400);
  auto trials = join_scores(g.scores_for(key), key);
  auto schema = PartitionSchema::for_track(Track::kAudio);
  std::size_t three = 0;
  for (const ScoredTrial &t : trials) three += t.meta.num_enroll_segments == 3;
  EXPECT_EQ(PartitionedScores(trials, schema).num_excluded(), three);
  EXPECT_TRUE(schema.drop_exclusion(PartitionSchema::multi_segment_enrollment().name));
  EXPECT_EQ(PartitionedScores(trials, schema).num_excluded(), 0u);
}

}  // namespace
}  // namespace sre
