// sre/backend/calibration.h

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


#ifndef SRE_BACKEND_CALIBRATION_H_
#define SRE_BACKEND_CALIBRATION_H_

#include <array>
#include <span>
#include <vector>

#include "sre/metrics.h"
#include "sre/trial_data.h"

namespace sre::backend {

struct LabeledScore {
  double score = 0.0;
  bool target = false;
};

/// Scores of `scores` joined with labels from `key`.
std::vector<LabeledScore> labeled_scores(const ScoreSet &scores, const TrialKey &key);

/// llr = a * score + b.
struct CalibrationMap {
  double a = 1.0;
  double b = 0.0;
  double effective_prior = 0.5;
  bool converged = false;
  /// Every target outscores every non-target, so the optimum is unbounded
  /// and the returned map is where the iteration cap stopped.
  bool separable = false;
  int iterations = 0;
  double gradient_norm = 0.0;

  bool order_preserving() const { return a > 0.0; }
  double apply(double score) const { return a * score + b; }
  ScoreSet apply(const ScoreSet &scores) const;
};

/// 1 / (1 + exp(mean_i ln beta_i)): the prior whose Bayes threshold is the
/// midpoint of the operating points' thresholds.
double default_effective_prior(std::span<const OperatingPoint> points);

/// Prior-weighted cross-entropy
///   pi/N_t sum_tar log(1+e^{-z}) + (1-pi)/N_n sum_non log(1+e^{z}),
/// z = a*s + b + logit(pi).
double calibration_objective(std::span<const LabeledScore> data, double prior, double a,
                             double b);
/// (dJ/da, dJ/db).
std::array<double, 2> calibration_gradient(std::span<const LabeledScore> data,
                                           double prior, double a, double b);

struct CalibrationOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-10;
};

/// Newton with backtracking from (a, b) = (1, 0). Throws
/// std::invalid_argument when a label class is missing or the prior is not
/// in (0, 1).
CalibrationMap fit_calibration(std::span<const LabeledScore> data, double effective_prior,
                               const CalibrationOptions &options = {});

}  // namespace sre::backend

#endif  // SRE_BACKEND_CALIBRATION_H_
