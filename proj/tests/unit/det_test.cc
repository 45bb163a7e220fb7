// tests/unit/det_test.cc

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
#include <sstream>

#include <gtest/gtest.h>

#include "generators.h"
#include "oracles.h"
#include "sre/det.h"

namespace sre {
namespace {

using testing::Gen;
using testing::simple_set;
using testing::single_cell_schema;

TEST(Probit, KnownValues) {
  EXPECT_EQ(probit(0.5), 0.0);
  EXPECT_NEAR(probit(0.975), 1.95996398, 1e-8);
  EXPECT_THROW(probit(0.0), std::invalid_argument);
  EXPECT_THROW(probit(1.0), std::invalid_argument);
}

TEST(Probit, MatchesHighPrecisionOracle) {
  Gen g(1);
  for (int i = 0; i < 2000; ++i) {
    double p = std::pow(10.0, g.uniform(-9, 0));
    if (g.coin()) p = 1.0 - p;
    if (p >= 1.0 - 1e-9) p = 1.0 - 1e-9;
    ASSERT_NEAR(probit(p), testing::reference_probit(p), 2e-8) << "p=" << p;
  }
}

TEST(Probit, AntisymmetricAndInvertsCdf) {
  for (double p : {1e-6, 0.01, 0.2, 0.37}) {
    EXPECT_NEAR(probit(p), -probit(1 - p), 1e-9);
    EXPECT_NEAR(normal_cdf(probit(p)), p, 1e-12 + 1e-9 * p);
  }
}

TEST(Det, PerfectSeparationReachesOrigin) {
  auto set = simple_set({3, 4}, {0, 1});
  auto w = equalization_weights(set.key, single_cell_schema());
  DetCurve c = det_points(set.scores, set.key, w);
  bool origin = false;
  for (const SweepPoint &p : c.points) origin |= p.p_miss == 0 && p.p_fa == 0;
  EXPECT_TRUE(origin);
}

TEST(Det, IdenticalScoresGiveCorners) {
  auto set = simple_set({1, 1, 1}, {1, 1});
  auto w = equalization_weights(set.key, single_cell_schema());
  DetCurve c = det_points(set.scores, set.key, w);
  ASSERT_EQ(c.points.size(), 2u);
  EXPECT_EQ(c.points[0].p_miss, 0.0);
  EXPECT_EQ(c.points[0].p_fa, 1.0);
  EXPECT_EQ(c.points[1].p_miss, 1.0);
  EXPECT_EQ(c.points[1].p_fa, 0.0);
}

TEST(Det, PointsMatchErrorRatesAndAreMonotone) {
  Gen g(2);
  for (int rep = 0; rep < 10; ++rep) {
    TrialKey key = g.audio_key(1000);
    ScoreSet scores = g.scores_for(key);
    auto schema = PartitionSchema::for_track(Track::kAudio);
    auto w = equalization_weights(key, schema);
    DetCurve c = det_points(scores, key, w);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const SweepPoint &p = c.points[i];
      if (std::isfinite(p.threshold)) {
        ErrorRates r = error_rates(scores, key, p.threshold, w);
        ASSERT_NEAR(r.p_miss, p.p_miss, 1e-12);
        ASSERT_NEAR(r.p_fa, p.p_fa, 1e-12);
      }
      if (i > 0) {
        ASSERT_GT(p.threshold, c.points[i - 1].threshold);
        ASSERT_GE(p.p_miss, c.points[i - 1].p_miss);
        ASSERT_LE(p.p_fa, c.points[i - 1].p_fa);
      }
    }
  }
}

TEST(Eer, Examples) {
  auto sep = simple_set({3, 4}, {0, 1});
  EXPECT_EQ(eer(det_points(PartitionedScores(join_scores(sep.scores, sep.key),
                                             single_cell_schema()))),
            0.0);

  Gen g(3);
  std::vector<double> t, n, u, v;
  for (int i = 0; i < 10000; ++i) {
    t.push_back(g.normal(1, 1));
    n.push_back(g.normal(-1, 1));
    u.push_back(g.normal());
    v.push_back(g.normal());
  }
  auto gauss = simple_set(t, n);
  double e = eer(det_points(PartitionedScores(join_scores(gauss.scores, gauss.key),
                                              single_cell_schema())));
  EXPECT_NEAR(e, normal_cdf(-1.0), 0.02);
  auto same = simple_set(u, v);
  double e_same = eer(det_points(PartitionedScores(join_scores(same.scores, same.key),
                                                   single_cell_schema())));
  EXPECT_NEAR(e_same, 0.5, 0.05);
}

TEST(Contour, EndpointsOnTheLine) {
  OperatingPoint p99(1, 1, 0.01);
  auto pts = equi_cost_contour(0.5, p99, 50);
  ASSERT_EQ(pts.size(), 50u);
  EXPECT_EQ(pts.front().p_miss, 0.5);
  EXPECT_NEAR(pts.back().p_fa, 0.5 / 99, 1e-15);
  EXPECT_NEAR(pts.back().p_miss, 0.0, 1e-15);
  for (const ContourPoint &c : pts) EXPECT_LT(std::abs(c.p_miss + 99 * c.p_fa - 0.5), 1e-12);
  EXPECT_THROW(equi_cost_contour(0.0, p99, 10), std::invalid_argument);
  EXPECT_THROW(equi_cost_contour(0.5, p99, 1), std::invalid_argument);
}

TEST(DetIo, RoundTrip) {
  Gen g(4);
  TrialKey key = g.audio_key(300);
  auto data = PartitionedScores(join_scores(g.scores_for(key), key),
                                PartitionSchema::for_track(Track::kAudio));
  DetCurve c = det_points(data);
  std::stringstream io;
  write_det(c, io);
  DetCurve back = read_det(io);
  ASSERT_EQ(back.points.size(), c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    EXPECT_EQ(back.points[i].threshold, c.points[i].threshold);
    EXPECT_EQ(back.points[i].p_miss, c.points[i].p_miss);
    EXPECT_EQ(back.points[i].p_fa, c.points[i].p_fa);
  }
}

}  // namespace
}  // namespace sre
