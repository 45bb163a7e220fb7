// core/src/det.cc

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

#include "sre/det.h"

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

#include "sre/text_io.h"

namespace sre {

DetCurve det_points(const PartitionedScores &data) {
  if (data.empty())
    throw EvaluationError("DET curve needs both target and non-target trials");
  return DetCurve{data.sweep()};
}

DetCurve det_points(const ScoreSet &scores, const TrialKey &key,
                    const EqualizationWeights &weights) {
  std::vector<ScoredTrial> trials = join_scores(scores, key);
  std::vector<ScoredTrial> kept;
  kept.reserve(trials.size());
  auto records = key.records();
  for (std::size_t i = 0; i < records.size(); ++i)
    if (weights.weight.contains(records[i].id)) kept.push_back(trials[i]);
  return det_points(PartitionedScores(kept, weights.schema));
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

// Acklam's coefficients.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLowRegion = 0.02425;

// p in (0, 0.5].
double probit_lower_half(double p) {
  double x;
  if (p < kLowRegion) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q +
         kC[5]) /
        ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  } else {
    double q = p - 0.5;
    double r = q * q;
    x = (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r +
         kA[5]) *
        q /
        (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r +
         1.0);
  }
  // Halley step. In the lower half Phi(x) is computed with full relative
  // precision by erfc, so the residual does not suffer cancellation.
  double e = normal_cdf(x) - p;
  double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double probit(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("probit: argument must lie in (0, 1)");
  if (p <= 0.5) return probit_lower_half(p);
  // 1 - p is exact for p in (0.5, 1).
  return -probit_lower_half(1.0 - p);
}

std::vector<ContourPoint> equi_cost_contour(double cost,
                                            const OperatingPoint &point,
                                            std::size_t n_samples) {
  if (!(cost > 0.0) || !std::isfinite(cost))
    throw std::invalid_argument("contour cost must be positive");
  if (n_samples < 2)
    throw std::invalid_argument("contour needs at least 2 samples");
  const double b = point.beta();
  // p_miss = cost - b p_fa must stay in [0, 1].
  double fa_lo = std::max(0.0, (cost - 1.0) / b);
  double fa_hi = std::min(1.0, cost / b);
  if (fa_lo > fa_hi)
    throw std::invalid_argument("equal-cost line does not meet the unit square");
  std::vector<ContourPoint> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(n_samples - 1);
    double p_fa = i + 1 == n_samples ? fa_hi : fa_lo + t * (fa_hi - fa_lo);
    double p_miss = std::clamp(cost - b * p_fa, 0.0, 1.0);
    out.push_back({p_fa, p_miss});
  }
  return out;
}

double eer(const DetCurve &curve) {
  const auto &pts = curve.points;
  if (pts.empty()) return 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double d = pts[i].p_miss - pts[i].p_fa;
    if (d == 0.0) return pts[i].p_miss;
    if (d > 0.0) {
      if (i == 0) return 0.5 * (pts[i].p_miss + pts[i].p_fa);
      const SweepPoint &a = pts[i - 1];
      const SweepPoint &b = pts[i];
      double da = a.p_miss - a.p_fa;
      double t = -da / (d - da);
      return a.p_miss + t * (b.p_miss - a.p_miss);
    }
  }
  const SweepPoint &last = pts.back();
  return 0.5 * (last.p_miss + last.p_fa);
}

namespace {

std::string format_probit(double p) {
  if (p <= 0.0) return "-inf";
  if (p >= 1.0) return "inf";
  return format_double(probit(p));
}

std::string format_threshold(double t) {
  if (std::isinf(t)) return t < 0 ? "-inf" : "inf";
  return format_double(t);
}

}  // namespace

void write_det(const DetCurve &curve, std::ostream &out) {
  out << kDetHeader << '\n';
  for (const SweepPoint &p : curve.points)
    out << format_threshold(p.threshold) << '\t' << format_double(p.p_miss)
        << '\t' << format_double(p.p_fa) << '\t' << format_probit(p.p_miss)
        << '\t' << format_probit(p.p_fa) << '\n';
}

DetCurve read_det(std::istream &in, const std::string &source) {
  std::string raw;
  if (!std::getline(in, raw)) throw ParseError(source, 1, "", "empty file");
  if (chomp(raw) != kDetHeader)
    throw ParseError(source, 1, "header", "malformed DET header");
  DetCurve curve;
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = chomp(raw);
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 5)
      throw ParseError(source, line_no, "", "expected 5 fields");
    SweepPoint p;
    const char *names[] = {"theta", "p_miss", "p_fa"};
    double *slots[] = {&p.threshold, &p.p_miss, &p.p_fa};
    for (int k = 0; k < 3; ++k) {
      auto v = parse_double(f[k]);
      if (!v) throw ParseError(source, line_no, names[k], "not a number");
      *slots[k] = *v;
    }
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace sre
