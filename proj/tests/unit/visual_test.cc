// tests/unit/visual_test.cc

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


#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "generators.h"
#include "oracles.h"
#include "sre/backend/scoring.h"
#include "sre/visual.h"

namespace sre::visual {
namespace {

using testing::Gen;

std::vector<Encoding> random_points(Gen &g, std::size_t n, std::size_t d) {
  std::vector<Encoding> out(n, Encoding(d));
  for (auto &p : out)
    for (double &x : p) x = g.normal(0, 2);
  return out;
}

TEST(KMeans, SingleClusterIsMean) {
  Gen g(1);
  for (int rep = 0; rep < 20; ++rep) {
    auto pts = random_points(g, 3 + g.index(40), 5);
    PseudoEncodings p = kmeanspp_cluster(pts, 1, 7);
    ASSERT_EQ(p.k(), 1u);
    EXPECT_EQ(p.centroids[0], testing::exact_mean(pts));
  }
}

TEST(KMeans, OneClusterPerPoint) {
  Gen g(2);
  auto pts = random_points(g, 6, 3);
  PseudoEncodings p = kmeanspp_cluster(pts, 6, 1);
  EXPECT_EQ(p.inertia, 0.0);
  auto sorted_c = p.centroids;
  auto sorted_p = pts;
  std::sort(sorted_c.begin(), sorted_c.end());
  std::sort(sorted_p.begin(), sorted_p.end());
  EXPECT_EQ(sorted_c, sorted_p);
}

TEST(KMeans, NotWorseThanExhaustiveOptimum) {
  Gen g(3);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t n = 3 + g.index(6);
    std::size_t k = 1 + g.index(std::min<std::size_t>(3, n));
    auto pts = random_points(g, n, 2);
    PseudoEncodings p = kmeanspp_cluster(pts, k, 100 + rep, 50);
    double opt = testing::exhaustive_min_inertia(pts, k);
    EXPECT_LE(p.inertia, opt * (1 + 1e-12) + 1e-12) << "n=" << n << " k=" << k;
  }
}

TEST(KMeans, InputOrderDoesNotMatter) {
  Gen g(4);
  auto pts = random_points(g, 30, 4);
  PseudoEncodings a = kmeanspp_cluster(pts, 4, 9);
  std::shuffle(pts.begin(), pts.end(), g.rng());
  PseudoEncodings b = kmeanspp_cluster(pts, 4, 9);
  EXPECT_EQ(a.centroids, b.centroids);
  EXPECT_EQ(a.inertia, b.inertia);
}

TEST(KMeans, TraceNonIncreasing) {
  Gen g(5);
  for (int rep = 0; rep < 20; ++rep) {
    auto pts = random_points(g, 50, 3);
    PseudoEncodings p = kmeanspp_cluster(pts, 5, rep);
    for (std::size_t i = 1; i < p.inertia_trace.size(); ++i)
      EXPECT_LE(p.inertia_trace[i], p.inertia_trace[i - 1] * (1 + 1e-12));
    EXPECT_EQ(p.inertia_trace.back(), p.inertia);
  }
}

TEST(KMeans, Errors) {
  std::vector<Encoding> none;
  EXPECT_THROW(kmeanspp_cluster(none, 1, 0), std::invalid_argument);
  std::vector<Encoding> two{{1, 2}, {3, 4}};
  EXPECT_THROW(kmeanspp_cluster(two, 3, 0), std::invalid_argument);
  EXPECT_THROW(kmeanspp_cluster(two, 0, 0), std::invalid_argument);
  std::vector<Encoding> ragged{{1, 2}, {3}};
  EXPECT_THROW(kmeanspp_cluster(ragged, 1, 0), std::invalid_argument);
}

TEST(VideoScore, IdenticalFramesScoreOne) {
  std::vector<double> e{0.3, -1, 2};
  FrameEncodings f{"v", {e, e, e}};
  EXPECT_NEAR(video_trial_score(e, f, 2, 1).score, 1.0, 1e-15);
}

TEST(VideoScore, KEqualsFramesIsDirectMax) {
  Gen g(6);
  for (int rep = 0; rep < 20; ++rep) {
    auto frames = random_points(g, 2 + g.index(8), 4);
    auto enroll = random_points(g, 1, 4)[0];
    double direct = -1.0;
    for (const Encoding &f : frames) direct = std::max(direct, backend::cosine_score(enroll, f));
    VideoScore s = video_trial_score(enroll, FrameEncodings{"v", frames}, frames.size(), rep);
    EXPECT_EQ(s.score, direct);
    EXPECT_EQ(s.k_used, frames.size());
  }
}

TEST(VideoScore, MixedVideoFindsMatchingCluster) {
  Gen g(7);
  Encoding centre{5, 0, 0, 0}, other{0, -5, 0, 0};
  std::vector<Encoding> frames;
  std::vector<Encoding> matching;
  for (int i = 0; i < 6; ++i) {
    Encoding a = centre, b = other;
    for (double &x : a) x += g.normal(0, 0.1);
    for (double &x : b) x += g.normal(0, 0.1);
    frames.push_back(a);
    matching.push_back(a);
    frames.push_back(b);
  }
  Encoding enroll{1, 0.2, 0, 0};
  VideoScore s = video_trial_score(enroll, FrameEncodings{"v", frames}, 2, 3);
  double want = backend::cosine_score(enroll, testing::exact_mean(matching));
  EXPECT_NEAR(s.score, want, 1e-6);
}

TEST(VideoScore, EmptyVideo) {
  std::vector<double> e{1, 0};
  VideoScore s = video_trial_score(e, FrameEncodings{"v", {}}, 5, 1);
  EXPECT_TRUE(s.empty_video);
  EXPECT_EQ(s.score, kEmptyVideoScore);
  std::vector<double> zero{0, 0};
  EXPECT_THROW(video_trial_score(zero, FrameEncodings{"v", {{1, 0}}}, 1, 1),
               std::invalid_argument);
}

TEST(VideoScore, KClampedToFrames) {
  std::vector<double> e{1, 0};
  VideoScore s = video_trial_score(e, FrameEncodings{"v", {{1, 1}, {2, 0}}}, 5, 1);
  EXPECT_EQ(s.k_used, 2u);
  EXPECT_EQ(s.score, 1.0);
}

}  // namespace
}  // namespace sre::visual
