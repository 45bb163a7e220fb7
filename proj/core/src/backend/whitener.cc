// core/src/backend/whitener.cc

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

#include "sre/backend/whitener.h"

#include <stdexcept>

namespace sre::backend {

Matrix Whitener::apply_rows(const Matrix &rows) const {
  return (rows.rowwise() - mean.transpose()) * transform.transpose();
}

Whitener fit_whitener(const Matrix &rows) {
  const Eigen::Index d = rows.cols();
  if (rows.rows() < d + 1)
    throw std::invalid_argument("whitener needs at least d + 1 = " +
                                std::to_string(d + 1) + " rows, got " +
                                std::to_string(rows.rows()));
  Whitener w;
  w.mean = rows.colwise().mean().transpose();
  Matrix cov = covariance(rows, w.mean);
  double floor = ridge_floor(cov);
  if (!(floor > 0.0))
    throw std::invalid_argument("whitener: covariance is singular (all rows equal)");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(floor_eigenvalues(cov, floor));
  Vector inv_sqrt = eig.eigenvalues().cwiseMax(floor).cwiseSqrt().cwiseInverse();
  w.transform = eig.eigenvectors() * inv_sqrt.asDiagonal() *
                eig.eigenvectors().transpose();
  return w;
}

Whitener fit_whitener(const EmbeddingTable &table) {
  return fit_whitener(to_matrix(table));
}

Vector length_norm(const Vector &v) {
  double n = v.norm();
  if (!(n > 0.0)) throw std::invalid_argument("length_norm of a zero vector");
  return v / n;
}

std::vector<double> length_norm(std::span<const double> v) {
  return to_std(length_norm(to_vector(v)));
}

Matrix length_norm_rows(const Matrix &rows) {
  Matrix out(rows.rows(), rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    out.row(i) = length_norm(Vector(rows.row(i).transpose())).transpose();
  return out;
}

}  // namespace sre::backend
