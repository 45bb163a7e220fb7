// tests/support/generators.h

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


#ifndef SRE_TESTS_GENERATORS_H_
#define SRE_TESTS_GENERATORS_H_

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sre/metrics.h"
#include "sre/trial_data.h"

namespace sre::testing {

/// Hand-rolled random input generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64 &rng() { return rng_; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double mean = 0.0, double sigma = 1.0) {
    return std::normal_distribution<double>(mean, sigma)(rng_);
  }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// Audio-track key with random metadata. Every model has at least one
  /// target and one non-target; some models use 3-segment enrollment.
  TrialKey audio_key(std::size_t max_trials);
  /// Scores for every key trial; a fraction are drawn from a coarse grid so
  /// that ties occur.
  ScoreSet scores_for(const TrialKey &key, double separation = 2.0);

  /// Random symmetric positive definite matrix with eigenvalues in [lo, hi].
  Eigen::MatrixXd spd(int k, double lo, double hi);

 private:
  std::mt19937_64 rng_;
};

/// A single-cell key (only the trivial schema applies) from target and
/// non-target scores, one model per trial.
struct KeyAndScores {
  TrialKey key;
  ScoreSet scores;
};
KeyAndScores simple_set(const std::vector<double> &targets, const std::vector<double> &nontargets);

/// Schema without dimensions or exclusions: one cell.
PartitionSchema single_cell_schema(Track track = Track::kAudio);

}  // namespace sre::testing

#endif  // SRE_TESTS_GENERATORS_H_
