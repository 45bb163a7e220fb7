// core/src/backend/calibration.cc

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


#include "sre/backend/calibration.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sre::backend {

namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

struct ClassCounts {
  double n_tar = 0.0;
  double n_non = 0.0;
};

ClassCounts count_classes(std::span<const LabeledScore> data) {
  ClassCounts c;
  for (const LabeledScore &d : data) (d.target ? c.n_tar : c.n_non) += 1.0;
  return c;
}

void check_inputs(std::span<const LabeledScore> data, double prior) {
  if (!(prior > 0.0 && prior < 1.0))
    throw std::invalid_argument("calibration prior must be in (0, 1)");
  ClassCounts c = count_classes(data);
  if (c.n_tar == 0.0 || c.n_non == 0.0)
    throw std::invalid_argument("calibration needs both target and non-target scores");
  for (const LabeledScore &d : data)
    if (!std::isfinite(d.score)) throw std::invalid_argument("calibration: non-finite score");
}

double logit(double p) { return std::log(p) - std::log1p(-p); }

// Per-trial weights pi/N_t and (1-pi)/N_n.
struct Weights {
  double tar;
  double non;
};

Weights class_weights(std::span<const LabeledScore> data, double prior) {
  ClassCounts c = count_classes(data);
  return {prior / c.n_tar, (1.0 - prior) / c.n_non};
}

}  // namespace

std::vector<LabeledScore> labeled_scores(const ScoreSet &scores, const TrialKey &key) {
  std::vector<LabeledScore> out;
  for (const ScoredTrial &t : join_scores(scores, key))
    out.push_back({t.llr, t.meta.is_target()});
  return out;
}

ScoreSet CalibrationMap::apply(const ScoreSet &scores) const {
  std::vector<ScoreEntry> out;
  out.reserve(scores.size());
  for (const ScoreEntry &e : scores.entries()) out.push_back({e.id, apply(e.llr)});
  return ScoreSet(std::move(out));
}

double default_effective_prior(std::span<const OperatingPoint> points) {
  if (points.empty()) throw std::invalid_argument("no operating points");
  double mean = 0.0;
  for (const OperatingPoint &p : points) mean += p.threshold();
  mean /= static_cast<double>(points.size());
  return 1.0 / (1.0 + std::exp(mean));
}

double calibration_objective(std::span<const LabeledScore> data, double prior, double a,
                             double b) {
  check_inputs(data, prior);
  const Weights w = class_weights(data, prior);
  const double off = b + logit(prior);
  double tar = 0.0, non = 0.0;
  for (const LabeledScore &d : data) {
    double z = a * d.score + off;
    if (d.target)
      tar += softplus(-z);
    else
      non += softplus(z);
  }
  return w.tar * tar + w.non * non;
}

std::array<double, 2> calibration_gradient(std::span<const LabeledScore> data,
                                           double prior, double a, double b) {
  check_inputs(data, prior);
  const Weights w = class_weights(data, prior);
  const double off = b + logit(prior);
  double ga = 0.0, gb = 0.0;
  for (const LabeledScore &d : data) {
    double z = a * d.score + off;
    double r = d.target ? -w.tar * sigmoid(-z) : w.non * sigmoid(z);
    ga += r * d.score;
    gb += r;
  }
  return {ga, gb};
}

CalibrationMap fit_calibration(std::span<const LabeledScore> data, double effective_prior,
                               const CalibrationOptions &options) {
  check_inputs(data, effective_prior);
  const Weights w = class_weights(data, effective_prior);
  const double lp = logit(effective_prior);

  CalibrationMap map;
  map.effective_prior = effective_prior;
  double min_tar = std::numeric_limits<double>::infinity();
  double max_non = -std::numeric_limits<double>::infinity();
  for (const LabeledScore &d : data) {
    if (d.target)
      min_tar = std::min(min_tar, d.score);
    else
      max_non = std::max(max_non, d.score);
  }
  map.separable = min_tar > max_non;

  double a = 1.0, b = 0.0;
  double f = calibration_objective(data, effective_prior, a, b);
  auto g = calibration_gradient(data, effective_prior, a, b);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (std::hypot(g[0], g[1]) < options.gradient_tolerance) break;
    double haa = 0.0, hab = 0.0, hbb = 0.0;
    for (const LabeledScore &d : data) {
      double z = a * d.score + b + lp;
      double s = sigmoid(z);
      double h = (d.target ? w.tar : w.non) * s * (1.0 - s);
      haa += h * d.score * d.score;
      hab += h * d.score;
      hbb += h;
    }
    double det = haa * hbb - hab * hab;
    double da, db;
    if (det > 1e-300 && std::isfinite(det)) {
      da = -(hbb * g[0] - hab * g[1]) / det;
      db = -(haa * g[1] - hab * g[0]) / det;
    } else {
      da = -g[0];
      db = -g[1];
    }
    const double slope = g[0] * da + g[1] * db;
    double t = 1.0;
    bool moved = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      double fa = calibration_objective(data, effective_prior, a + t * da, b + t * db);
      if (fa <= f + 1e-4 * t * slope) {
        a += t * da;
        b += t * db;
        f = fa;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    g = calibration_gradient(data, effective_prior, a, b);
  }
  map.a = a;
  map.b = b;
  map.iterations = it;
  map.gradient_norm = std::hypot(g[0], g[1]);
  map.converged = !map.separable && map.gradient_norm < 1e-8;
  return map;
}

}  // namespace sre::backend
