// sre/backend/plda.h

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

#ifndef SRE_BACKEND_PLDA_H_
#define SRE_BACKEND_PLDA_H_

#include <vector>

#include "sre/backend/linalg.h"

namespace sre::backend {

/// Two-covariance Gaussian PLDA: a segment of speaker s is x = y_s + e with
/// y_s ~ N(mu, B) and e ~ N(0, W).
struct PldaModel {
  Vector mu;
  Matrix B;  // between-speaker, PSD
  Matrix W;  // within-speaker, positive definite

  std::size_t dim() const { return static_cast<std::size_t>(mu.size()); }
};

/// Throws std::invalid_argument unless mu, B, W agree in size, B and W are
/// symmetric, B is PSD and W is positive definite (tolerance is relative).
void check_model(const PldaModel &model);

struct PldaFitOptions {
  int max_iterations = 200;
  double tolerance = 1e-6;  // relative log-likelihood improvement
};

struct PldaFitResult {
  PldaModel model;
  /// Training log-likelihood of the initial estimate followed by one entry
  /// per EM iteration.
  std::vector<double> log_likelihood;
  int iterations = 0;
  bool converged = false;
};

/// EM on speaker-grouped rows. Needs >= 2 speakers and some speaker with
/// >= 2 segments; throws std::invalid_argument otherwise.
PldaFitResult fit_plda_em(const Matrix &rows,
                          const std::map<std::string, std::vector<std::size_t>> &groups,
                          const PldaFitOptions &options = {});
PldaFitResult fit_plda_em(const EmbeddingTable &table,
                          const PldaFitOptions &options = {});
PldaModel fit_plda(const EmbeddingTable &table);

/// (1 - alpha) * model + alpha * in_domain, parameter-wise.
PldaModel map_adapt(const PldaModel &model, const PldaModel &in_domain, double alpha);
/// As above with the in-domain model fitted by fit_plda on `indomain`.
PldaModel map_adapt(const PldaModel &model, const EmbeddingTable &indomain,
                    double alpha);

/// Closed-form scoring in the basis that makes W = I and B diagonal.
class PldaScorer {
 public:
  explicit PldaScorer(const PldaModel &model);

  std::size_t dim() const { return static_cast<std::size_t>(psi_.size()); }
  /// Between-class variances in the diagonal basis.
  const Vector &psi() const { return psi_; }
  /// u = T (x - mu). Throws std::invalid_argument on a dimension mismatch.
  Vector project(const Vector &x) const;

  /// Sufficient statistics of a set of projected vectors.
  struct Stats {
    std::size_t n = 0;
    Vector sum;
  };
  Stats stats(std::span<const Vector> projected) const;

  /// log p(all enroll + test share a speaker) - log p(enroll) - log p(test),
  /// in projected coordinates.
  double llr(const Stats &enroll, const Vector &test_projected) const;
  double llr(std::span<const Vector> enroll, const Vector &test) const;

  /// Joint log density of vectors that share one speaker (raw coordinates).
  double log_marginal(std::span<const Vector> xs) const;

 private:
  Vector mu_;
  Matrix transform_;
  Vector psi_;
  double log_det_transform_ = 0.0;
};

double plda_llr(const PldaModel &model, std::span<const Vector> enroll,
                const Vector &test);
double plda_llr(const PldaModel &model, const std::vector<std::vector<double>> &enroll,
                const std::vector<double> &test);

/// Sum over speakers of the joint log density of their segments.
double plda_log_likelihood(const PldaModel &model, const Matrix &rows,
                           const std::map<std::string, std::vector<std::size_t>> &groups);

}  // namespace sre::backend

#endif  // SRE_BACKEND_PLDA_H_
