// sre/backend/scoring.h

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


#ifndef SRE_BACKEND_SCORING_H_
#define SRE_BACKEND_SCORING_H_

#include <span>
#include <vector>

#include "sre/trial_data.h"

namespace sre::backend {

inline constexpr std::size_t kDefaultSnormTopK = 200;
inline constexpr double kSnormSigmaFloor = 1e-6;

/// a.b / (|a| |b|), clamped to [-1, 1]. Throws std::invalid_argument on a
/// zero vector or a size mismatch.
double cosine_score(std::span<const double> a, std::span<const double> b);

/// Mean and (population) standard deviation of the top_k largest values;
/// the deviation is floored at kSnormSigmaFloor.
struct CohortStats {
  double mean = 0.0;
  double sigma = 0.0;
};
CohortStats top_k_stats(std::span<const double> cohort_scores, std::size_t top_k);

/// 0.5 * ((raw - mu_e) / sigma_e + (raw - mu_t) / sigma_t) over each side's
/// top_k highest cohort scores. Throws std::invalid_argument when top_k < 2
/// or either cohort has fewer than top_k scores.
double adaptive_snorm(double raw, std::span<const double> enroll_cohort_scores,
                      std::span<const double> test_cohort_scores, std::size_t top_k);
double adaptive_snorm(double raw, const CohortStats &enroll, const CohortStats &test);

/// offset + sum_i weights[i] * sets[i] per trial. All sets must cover the
/// same trials; throws std::invalid_argument otherwise.
ScoreSet fuse(std::span<const ScoreSet> sets, std::span<const double> weights,
              double offset);

}  // namespace sre::backend

#endif  // SRE_BACKEND_SCORING_H_
