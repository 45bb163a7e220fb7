// core/src/backend/plda.cc

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

#include "sre/backend/plda.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sre::backend {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

Matrix spd_inverse(const Matrix &m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("PLDA: matrix is not positive definite");
  return llt.solve(Matrix::Identity(m.rows(), m.cols()));
}

void check_groups(const Matrix &rows,
                  const std::map<std::string, std::vector<std::size_t>> &groups) {
  if (groups.size() < 2) throw std::invalid_argument("PLDA needs at least 2 speakers");
  bool repeated = false;
  for (const auto &[speaker, idx] : groups) {
    if (idx.empty()) throw std::invalid_argument("PLDA: speaker '" + speaker + "' has no rows");
    for (std::size_t i : idx)
      if (i >= static_cast<std::size_t>(rows.rows()))
        throw std::invalid_argument("PLDA: row index out of range");
    repeated = repeated || idx.size() >= 2;
  }
  if (!repeated)
    throw std::invalid_argument(
        "PLDA: no speaker has 2 or more segments, between-speaker covariance "
        "is not identifiable");
}

// Per-speaker sufficient statistics.
struct SpeakerStats {
  double n;
  Vector sum;
};

std::vector<SpeakerStats> speaker_stats(
    const Matrix &rows, const std::map<std::string, std::vector<std::size_t>> &groups) {
  std::vector<SpeakerStats> out;
  out.reserve(groups.size());
  for (const auto &[speaker, idx] : groups) {
    Vector s = Vector::Zero(rows.cols());
    for (std::size_t i : idx) s += rows.row(static_cast<Eigen::Index>(i)).transpose();
    out.push_back({static_cast<double>(idx.size()), std::move(s)});
  }
  return out;
}

}  // namespace

void check_model(const PldaModel &m) {
  const Eigen::Index k = m.mu.size();
  if (k == 0 || m.B.rows() != k || m.B.cols() != k || m.W.rows() != k || m.W.cols() != k)
    throw std::invalid_argument("PLDA model: inconsistent dimensions");
  if (!m.mu.allFinite() || !m.B.allFinite() || !m.W.allFinite())
    throw std::invalid_argument("PLDA model: non-finite parameter");
  double scale = std::max({m.B.norm(), m.W.norm(), 1e-300});
  if ((m.B - m.B.transpose()).norm() > 1e-9 * scale ||
      (m.W - m.W.transpose()).norm() > 1e-9 * scale)
    throw std::invalid_argument("PLDA model: covariance is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eb(m.B, Eigen::EigenvaluesOnly);
  if (eb.eigenvalues().minCoeff() < -1e-9 * scale)
    throw std::invalid_argument("PLDA model: B is not positive semidefinite");
  Eigen::LLT<Matrix> lw(m.W);
  if (lw.info() != Eigen::Success)
    throw std::invalid_argument("PLDA model: W is not positive definite");
}

PldaScorer::PldaScorer(const PldaModel &model) : mu_(model.mu) {
  check_model(model);
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(
      0.5 * (model.B + model.B.transpose()), 0.5 * (model.W + model.W.transpose()));
  if (ges.info() != Eigen::Success)
    throw std::invalid_argument("PLDA: simultaneous diagonalization failed");
  // Columns v satisfy v' W v = 1 and v' B v = psi.
  transform_ = ges.eigenvectors().transpose();
  psi_ = ges.eigenvalues().cwiseMax(0.0);
  log_det_transform_ = -0.5 * log_det_spd(0.5 * (model.W + model.W.transpose()));
}

Vector PldaScorer::project(const Vector &x) const {
  if (x.size() != mu_.size())
    throw std::invalid_argument("PLDA: vector of dimension " + std::to_string(x.size()) +
                                ", model has " + std::to_string(mu_.size()));
  return transform_ * (x - mu_);
}

PldaScorer::Stats PldaScorer::stats(std::span<const Vector> projected) const {
  Stats s;
  s.sum = Vector::Zero(psi_.size());
  for (const Vector &u : projected) {
    if (u.size() != psi_.size()) throw std::invalid_argument("PLDA: dimension mismatch");
    s.sum += u;
    ++s.n;
  }
  return s;
}

double PldaScorer::llr(const Stats &enroll, const Vector &t) const {
  if (enroll.n == 0) throw std::invalid_argument("PLDA: empty enrollment");
  if (t.size() != psi_.size() || enroll.sum.size() != psi_.size())
    throw std::invalid_argument("PLDA: dimension mismatch");
  const double n = static_cast<double>(enroll.n);
  double total = 0.0;
  for (Eigen::Index j = 0; j < psi_.size(); ++j) {
    const double p = psi_(j), s = enroll.sum(j), u = t(j);
    const double dn1 = 1.0 + (n + 1.0) * p, dn = 1.0 + n * p, d1 = 1.0 + p;
    total += -0.5 * std::log(dn1) + 0.5 * std::log(dn) + 0.5 * std::log(d1) +
             0.5 * (p * (s + u) * (s + u) / dn1 - p * s * s / dn - p * u * u / d1);
  }
  return total;
}

double PldaScorer::llr(std::span<const Vector> enroll, const Vector &test) const {
  std::vector<Vector> projected;
  projected.reserve(enroll.size());
  for (const Vector &e : enroll) projected.push_back(project(e));
  return llr(stats(projected), project(test));
}

double PldaScorer::log_marginal(std::span<const Vector> xs) const {
  if (xs.empty()) return 0.0;
  const double n = static_cast<double>(xs.size());
  Vector sum = Vector::Zero(psi_.size());
  Vector sq = Vector::Zero(psi_.size());
  for (const Vector &x : xs) {
    Vector u = project(x);
    sum += u;
    sq += u.cwiseAbs2();
  }
  double total = n * log_det_transform_;
  for (Eigen::Index j = 0; j < psi_.size(); ++j) {
    const double p = psi_(j), d = 1.0 + n * p;
    total += -0.5 * n * kLog2Pi - 0.5 * std::log(d) -
             0.5 * (sq(j) - p * sum(j) * sum(j) / d);
  }
  return total;
}

double plda_llr(const PldaModel &model, std::span<const Vector> enroll,
                const Vector &test) {
  return PldaScorer(model).llr(enroll, test);
}

double plda_llr(const PldaModel &model, const std::vector<std::vector<double>> &enroll,
                const std::vector<double> &test) {
  std::vector<Vector> e;
  for (const auto &v : enroll) e.push_back(to_vector(v));
  return plda_llr(model, e, to_vector(test));
}

double plda_log_likelihood(const PldaModel &model, const Matrix &rows,
                           const std::map<std::string, std::vector<std::size_t>> &groups) {
  PldaScorer scorer(model);
  double total = 0.0;
  std::vector<Vector> xs;
  for (const auto &[speaker, idx] : groups) {
    xs.clear();
    for (std::size_t i : idx) xs.push_back(rows.row(static_cast<Eigen::Index>(i)).transpose());
    total += scorer.log_marginal(xs);
  }
  return total;
}

PldaFitResult fit_plda_em(const Matrix &rows,
                          const std::map<std::string, std::vector<std::size_t>> &groups,
                          const PldaFitOptions &options) {
  check_groups(rows, groups);
  const Eigen::Index k = rows.cols();
  const std::vector<SpeakerStats> spk = speaker_stats(rows, groups);
  const double n_spk = static_cast<double>(spk.size());
  double n_total = 0.0;
  for (const auto &[speaker, idx] : groups) n_total += static_cast<double>(idx.size());

  // Only rows that belong to some speaker take part.
  Matrix scatter = Matrix::Zero(k, k);
  Vector mean = Vector::Zero(k);
  for (const auto &[speaker, idx] : groups)
    for (std::size_t i : idx) {
      Vector x = rows.row(static_cast<Eigen::Index>(i)).transpose();
      scatter.noalias() += x * x.transpose();
      mean += x;
    }
  mean /= n_total;
  Matrix total_cov = scatter / n_total - mean * mean.transpose();
  const double floor = ridge_floor(0.5 * (total_cov + total_cov.transpose()));
  if (!(floor > 0.0)) throw std::invalid_argument("PLDA: training data has zero variance");

  // Moment estimates.
  PldaModel m;
  m.mu = mean;
  Matrix within = scatter;
  Matrix between = Matrix::Zero(k, k);
  for (const SpeakerStats &s : spk) {
    Vector c = s.sum / s.n;
    within.noalias() -= s.n * c * c.transpose();
    Vector g = c - mean;
    between.noalias() += g * g.transpose();
  }
  m.W = floor_eigenvalues(within / n_total, floor);
  m.B = floor_eigenvalues(between / n_spk, floor);

  PldaFitResult result;
  result.log_likelihood.push_back(plda_log_likelihood(m, rows, groups));

  for (int it = 0; it < options.max_iterations; ++it) {
    const Matrix lambda = spd_inverse(m.B);
    const Matrix phi = spd_inverse(m.W);
    const Vector lambda_mu = lambda * m.mu;
    std::map<double, Matrix> cov_by_n;

    Vector sum_ey = Vector::Zero(k);
    Matrix sum_eyy = Matrix::Zero(k, k);
    Matrix cross = Matrix::Zero(k, k);
    Matrix weighted_eyy = Matrix::Zero(k, k);
    for (const SpeakerStats &s : spk) {
      auto found = cov_by_n.find(s.n);
      if (found == cov_by_n.end())
        found = cov_by_n.emplace(s.n, spd_inverse(lambda + s.n * phi)).first;
      const Matrix &post_cov = found->second;
      Vector ey = post_cov * (lambda_mu + phi * s.sum);
      Matrix eyy = post_cov + ey * ey.transpose();
      sum_ey += ey;
      sum_eyy += eyy;
      cross.noalias() += ey * s.sum.transpose();
      weighted_eyy += s.n * eyy;
    }
    m.mu = sum_ey / n_spk;
    Matrix b = sum_eyy / n_spk - m.mu * m.mu.transpose();
    Matrix w = (scatter - cross - cross.transpose() + weighted_eyy) / n_total;
    m.B = floor_eigenvalues(b, floor);
    m.W = floor_eigenvalues(w, floor);

    double ll = plda_log_likelihood(m, rows, groups);
    double prev = result.log_likelihood.back();
    result.log_likelihood.push_back(ll);
    result.iterations = it + 1;
    if ((ll - prev) / std::max(std::abs(prev), 1e-300) < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.model = std::move(m);
  return result;
}

PldaFitResult fit_plda_em(const EmbeddingTable &table, const PldaFitOptions &options) {
  if (table.empty()) throw std::invalid_argument("PLDA: empty training table");
  return fit_plda_em(to_matrix(table), group_by_speaker(table), options);
}

PldaModel fit_plda(const EmbeddingTable &table) { return fit_plda_em(table).model; }

PldaModel map_adapt(const PldaModel &model, const PldaModel &in_domain, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("MAP adaptation weight must be in [0, 1]");
  if (in_domain.dim() != model.dim())
    throw std::invalid_argument("MAP adaptation: in-domain model has dimension " +
                                std::to_string(in_domain.dim()) + ", model has " +
                                std::to_string(model.dim()));
  const double keep = 1.0 - alpha;
  PldaModel out;
  out.mu = keep * model.mu + alpha * in_domain.mu;
  out.B = keep * model.B + alpha * in_domain.B;
  out.W = keep * model.W + alpha * in_domain.W;
  return out;
}

PldaModel map_adapt(const PldaModel &model, const EmbeddingTable &indomain, double alpha) {
  if (indomain.empty()) throw std::invalid_argument("MAP adaptation: empty in-domain set");
  if (indomain.dim() != model.dim())
    throw std::invalid_argument("MAP adaptation: in-domain data has dimension " +
                                std::to_string(indomain.dim()) + ", model has " +
                                std::to_string(model.dim()));
  return map_adapt(model, fit_plda(indomain), alpha);
}

}  // namespace sre::backend
