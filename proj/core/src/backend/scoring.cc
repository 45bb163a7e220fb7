// core/src/backend/scoring.cc

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


#include "sre/backend/scoring.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sre::backend {

double cosine_score(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cosine_score: vectors of different dimension");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("cosine_score: zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

CohortStats top_k_stats(std::span<const double> cohort_scores, std::size_t top_k) {
  if (top_k < 2) throw std::invalid_argument("s-norm: top_k must be at least 2");
  if (cohort_scores.size() < top_k)
    throw std::invalid_argument("s-norm: cohort has " + std::to_string(cohort_scores.size()) +
                                " scores, fewer than top_k = " + std::to_string(top_k));
  std::vector<double> v(cohort_scores.begin(), cohort_scores.end());
  std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(top_k), v.end(),
                    std::greater<>());
  // Sorted order makes the sums independent of the input order.
  std::sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(top_k));
  const double k = static_cast<double>(top_k);
  double mean = 0.0;
  for (std::size_t i = 0; i < top_k; ++i) mean += v[i];
  mean /= k;
  double var = 0.0;
  for (std::size_t i = 0; i < top_k; ++i) var += (v[i] - mean) * (v[i] - mean);
  return {mean, std::max(std::sqrt(var / k), kSnormSigmaFloor)};
}

double adaptive_snorm(double raw, const CohortStats &e, const CohortStats &t) {
  return 0.5 * ((raw - e.mean) / e.sigma + (raw - t.mean) / t.sigma);
}

double adaptive_snorm(double raw, std::span<const double> enroll_cohort_scores,
                      std::span<const double> test_cohort_scores, std::size_t top_k) {
  return adaptive_snorm(raw, top_k_stats(enroll_cohort_scores, top_k),
                        top_k_stats(test_cohort_scores, top_k));
}

ScoreSet fuse(std::span<const ScoreSet> sets, std::span<const double> weights,
              double offset) {
  if (sets.empty()) throw std::invalid_argument("fuse: no score sets");
  if (sets.size() != weights.size())
    throw std::invalid_argument("fuse: " + std::to_string(sets.size()) + " score sets but " +
                                std::to_string(weights.size()) + " weights");
  const auto base = sets[0].entries();
  for (std::size_t s = 1; s < sets.size(); ++s) {
    const auto other = sets[s].entries();
    if (other.size() != base.size())
      throw std::invalid_argument("fuse: score set " + std::to_string(s) + " covers " +
                                  std::to_string(other.size()) + " trials, set 0 covers " +
                                  std::to_string(base.size()));
    for (std::size_t i = 0; i < base.size(); ++i)
      if (!(other[i].id == base[i].id))
        throw std::invalid_argument("fuse: score set " + std::to_string(s) +
                                    " lacks trial (" + base[i].id.model_id + ", " +
                                    base[i].id.segment_id + ")");
  }
  std::vector<ScoreEntry> out;
  out.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    double v = offset;
    for (std::size_t s = 0; s < sets.size(); ++s) v += weights[s] * sets[s].entries()[i].llr;
    out.push_back({base[i].id, v});
  }
  return ScoreSet(std::move(out));
}

}  // namespace sre::backend
