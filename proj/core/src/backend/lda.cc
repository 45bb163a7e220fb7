// core/src/backend/lda.cc

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

#include "sre/backend/lda.h"

#include <stdexcept>

namespace sre::backend {

LdaProjection fit_lda(const Matrix &rows,
                      const std::map<std::string, std::vector<std::size_t>> &groups,
                      std::size_t out_dim) {
  const Eigen::Index d = rows.cols();
  const std::size_t n_speakers = groups.size();
  if (n_speakers < 2) throw std::invalid_argument("LDA needs at least 2 speakers");
  if (out_dim == 0 || out_dim > static_cast<std::size_t>(d) ||
      out_dim > n_speakers - 1)
    throw std::invalid_argument(
        "LDA output dimension " + std::to_string(out_dim) +
        " must be in [1, min(d, #speakers - 1)] = [1, " +
        std::to_string(std::min<std::size_t>(static_cast<std::size_t>(d),
                                             n_speakers - 1)) +
        "]");

  const double n = static_cast<double>(rows.rows());
  Vector global_mean = rows.colwise().mean().transpose();
  Matrix within = Matrix::Zero(d, d);
  Matrix between = Matrix::Zero(d, d);
  for (const auto &[speaker, idx] : groups) {
    Vector m = Vector::Zero(d);
    for (std::size_t i : idx) m += rows.row(static_cast<Eigen::Index>(i)).transpose();
    m /= static_cast<double>(idx.size());
    for (std::size_t i : idx) {
      Vector c = rows.row(static_cast<Eigen::Index>(i)).transpose() - m;
      within.noalias() += c * c.transpose();
    }
    Vector g = m - global_mean;
    between.noalias() += static_cast<double>(idx.size()) * g * g.transpose();
  }
  within /= n;
  between /= n;

  // The floor is relative to the total scatter so that a within-class
  // scatter that is exactly zero along some direction still gets one.
  double floor = kRidge * (within + between).trace() / static_cast<double>(d);
  if (!(floor > 0.0))
    throw std::invalid_argument("LDA: scatter matrices are zero");
  within = floor_eigenvalues(within, floor);

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(
      0.5 * (between + between.transpose()), within);
  if (ges.info() != Eigen::Success)
    throw std::invalid_argument("LDA: within-class scatter is singular");

  LdaProjection lda;
  const Eigen::Index k = static_cast<Eigen::Index>(out_dim);
  lda.basis.resize(k, d);
  lda.eigenvalues.resize(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    Eigen::Index col = d - 1 - r;  // eigenvalues come out ascending
    Vector v = ges.eigenvectors().col(col);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    lda.basis.row(r) = v.transpose();
    lda.eigenvalues(r) = ges.eigenvalues()(col);
  }
  return lda;
}

LdaProjection fit_lda(const EmbeddingTable &table, std::size_t out_dim) {
  return fit_lda(to_matrix(table), group_by_speaker(table), out_dim);
}

}  // namespace sre::backend
