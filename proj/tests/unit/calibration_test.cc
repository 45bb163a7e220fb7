// tests/unit/calibration_test.cc

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

#include <gtest/gtest.h>

#include "generators.h"
#include "sre/backend/calibration.h"
#include "sre/backend/model_io.h"

namespace sre::backend {
namespace {

using testing::Gen;

std::vector<LabeledScore> calibrated_llrs(Gen &g, int n) {
  std::vector<LabeledScore> d;
  for (int i = 0; i < n; ++i) {
    d.push_back({g.normal(2.0, 2.0), true});
    d.push_back({g.normal(-2.0, 2.0), false});
  }
  return d;
}

TEST(Calibration, DefaultPrior) {
  double p = default_effective_prior(default_operating_points());
  EXPECT_NEAR(p, 1.0 / (1.0 + std::sqrt(99.0 * 19.0)), 1e-15);
}

TEST(Calibration, RecoversIdentityOnTrueLlrs) {
  Gen g(1);
  auto data = calibrated_llrs(g, 50000);
  const double prior = default_effective_prior(default_operating_points());
  CalibrationMap m = fit_calibration(data, prior);
  EXPECT_TRUE(m.converged);
  EXPECT_FALSE(m.separable);
  EXPECT_NEAR(m.a, 1.0, 0.05);
  EXPECT_NEAR(m.b, 0.0, 0.05);
}

TEST(Calibration, IndependentLabelsGiveFlatMap) {
  Gen g(2);
  std::vector<LabeledScore> d;
  for (int i = 0; i < 100000; ++i) d.push_back({g.normal(0, 3), g.coin()});
  CalibrationMap m = fit_calibration(d, 0.3);
  EXPECT_NEAR(m.a, 0.0, 0.05);
}

TEST(Calibration, GradientMatchesFiniteDifferences) {
  Gen g(3);
  auto data = calibrated_llrs(g, 500);
  for (double a : {0.3, 1.0, 2.0})
    for (double b : {-1.0, 0.0, 0.7}) {
      auto grad = calibration_gradient(data, 0.1, a, b);
      const double h = 1e-6;
      double fa = (calibration_objective(data, 0.1, a + h, b) -
                   calibration_objective(data, 0.1, a - h, b)) / (2 * h);
      double fb = (calibration_objective(data, 0.1, a, b + h) -
                   calibration_objective(data, 0.1, a, b - h)) / (2 * h);
      EXPECT_NEAR(grad[0], fa, 1e-7);
      EXPECT_NEAR(grad[1], fb, 1e-7);
    }
}

TEST(Calibration, OptimumIsStationary) {
  Gen g(4);
  std::vector<LabeledScore> d;
  for (int i = 0; i < 2000; ++i) d.push_back({g.normal(1, 3), true});
  for (int i = 0; i < 5000; ++i) d.push_back({g.normal(-2, 2), false});
  CalibrationMap m = fit_calibration(d, 0.05);
  EXPECT_TRUE(m.converged);
  EXPECT_LT(m.gradient_norm, 1e-8);
  const double h = 1e-6;
  EXPECT_LT(std::abs(calibration_objective(d, 0.05, m.a + h, m.b) -
                     calibration_objective(d, 0.05, m.a - h, m.b)) / (2 * h), 1e-6);
  EXPECT_LT(std::abs(calibration_objective(d, 0.05, m.a, m.b + h) -
                     calibration_objective(d, 0.05, m.a, m.b - h)) / (2 * h), 1e-6);
}

TEST(Calibration, SeparableIsFlagged) {
  std::vector<LabeledScore> d{{2.0, true}, {3.0, true}, {0.0, false}, {-1.0, false}};
  CalibrationMap m = fit_calibration(d, 0.5);
  EXPECT_TRUE(m.separable);
  EXPECT_FALSE(m.converged);
}

TEST(Calibration, Errors) {
  std::vector<LabeledScore> only{{1.0, true}};
  EXPECT_THROW(fit_calibration(only, 0.5), std::invalid_argument);
  std::vector<LabeledScore> d{{1.0, true}, {0.0, false}};
  EXPECT_THROW(fit_calibration(d, 1.0), std::invalid_argument);
}

TEST(Calibration, KeepsMinimumCost) {
  Gen g(5);
  TrialKey key = g.audio_key(2000);
  ScoreSet scores = g.scores_for(key);
  auto schema = PartitionSchema::for_track(Track::kAudio);
  auto points = default_operating_points();
  CalibrationMap m = fit_calibration(labeled_scores(scores, key), default_effective_prior(points));
  ASSERT_TRUE(m.order_preserving());
  EXPECT_EQ(min_c_primary(m.apply(scores), key, schema, points).min_c_primary,
            min_c_primary(scores, key, schema, points).min_c_primary);
}

TEST(Calibration, JsonRoundTrip) {
  CalibrationMap m;
  m.a = 0.8123456789;
  m.b = -1.25e-3;
  m.effective_prior = 0.0225;
  m.converged = true;
  m.iterations = 7;
  m.gradient_norm = 3e-12;
  CalibrationMap back = calibration_from_json(calibration_to_json(m));
  EXPECT_EQ(back.a, m.a);
  EXPECT_EQ(back.b, m.b);
  EXPECT_EQ(back.effective_prior, m.effective_prior);
  EXPECT_EQ(back.converged, m.converged);
}

}  // namespace
}  // namespace sre::backend
