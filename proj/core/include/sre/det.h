// sre/det.h

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

// DET curves, probit axis warping, equal-cost lines, EER and bootstrap
// confidence intervals for the cost.

#ifndef SRE_DET_H_
#define SRE_DET_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sre/metrics.h"

namespace sre {

/// Equalized (threshold, p_miss, p_fa) triples with strictly increasing
/// thresholds. The first point is at -inf (0, 1), the last at +inf (1, 0).
struct DetCurve {
  std::vector<SweepPoint> points;
};

DetCurve det_points(const PartitionedScores &data);
/// Throws EvaluationError when either class is empty after partitioning.
DetCurve det_points(const ScoreSet &scores, const TrialKey &key,
                    const EqualizationWeights &weights);

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0, 1); std::invalid_argument
/// otherwise. Acklam's rational approximation followed by one Halley step;
/// absolute error is well below 1e-8 over [1e-300, 1 - 1e-16].
double probit(double p);

struct ContourPoint {
  double p_fa = 0.0;
  double p_miss = 0.0;
};

/// n_samples evenly spaced points (in p_fa) of p_miss + beta p_fa = cost
/// inside the unit square, endpoints included. Throws std::invalid_argument
/// when cost <= 0, n_samples < 2, or the line misses the square.
std::vector<ContourPoint> equi_cost_contour(double cost,
                                            const OperatingPoint &point,
                                            std::size_t n_samples);

/// Rate where p_miss = p_fa, linearly interpolated between the two curve
/// points that bracket the crossing.
double eer(const DetCurve &curve);

/// TSV with header theta, p_miss, p_fa, probit_miss, probit_fa. Probits of
/// 0 and 1 are written as -inf / inf.
inline constexpr std::string_view kDetHeader =
    "theta\tp_miss\tp_fa\tprobit_miss\tprobit_fa";
void write_det(const DetCurve &curve, std::ostream &out);
DetCurve read_det(std::istream &in, const std::string &source = "<stream>");

// ---------------------------------------------------------------------------
// Bootstrap.

enum class CostKind { kActual, kMin };
enum class ResampleUnit {
  kModels,             // resample model ids; their trials come along
  kModelsAndSegments,  // additionally resample trials within each model
};

std::string_view to_string(CostKind k);
std::string_view to_string(ResampleUnit u);

struct BootstrapOptions {
  CostKind metric = CostKind::kActual;
  std::size_t n_replicates = 1000;
  double level = 0.95;
  std::uint64_t seed = 0;
  ResampleUnit unit = ResampleUnit::kModels;
  std::vector<OperatingPoint> points = default_operating_points();
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Fraction of replicates allowed to have no participating cell.
  double max_discard_fraction = 0.10;
};

struct ConfidenceInterval {
  double point_estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  std::size_t n_replicates = 0;
  std::size_t n_discarded = 0;
  std::uint64_t seed = 0;
  CostKind metric = CostKind::kActual;
  ResampleUnit unit = ResampleUnit::kModels;
};

/// Nearest-rank quantile of an ascending sample: element ceil(q n), 1-based.
double nearest_rank_quantile(std::span<const double> sorted, double q);

/// Replicate costs (ascending) with discarded replicates removed; the
/// number discarded is written to *discarded when non-null.
std::vector<double> bootstrap_replicates(const ScoreSet &scores,
                                         const TrialKey &key,
                                         const PartitionSchema &schema,
                                         const BootstrapOptions &options,
                                         std::size_t *discarded = nullptr);

/// Percentile interval at (1 - level)/2 and 1 - (1 - level)/2. Throws
/// EvaluationError when more than max_discard_fraction of replicates are
/// degenerate.
ConfidenceInterval bootstrap_ci(const ScoreSet &scores, const TrialKey &key,
                                const PartitionSchema &schema,
                                const BootstrapOptions &options);

}  // namespace sre

#endif  // SRE_DET_H_
