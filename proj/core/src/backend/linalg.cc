// core/src/backend/linalg.cc

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

#include "sre/backend/linalg.h"

#include <stdexcept>

namespace sre::backend {

Vector to_vector(std::span<const double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

std::vector<double> to_std(const Vector &v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Matrix to_matrix(const EmbeddingTable &table) {
  Matrix m(static_cast<Eigen::Index>(table.size()),
           static_cast<Eigen::Index>(table.dim()));
  Eigen::Index i = 0;
  for (const EmbeddingRow &row : table.rows()) {
    for (std::size_t j = 0; j < row.vector.size(); ++j)
      m(i, static_cast<Eigen::Index>(j)) = row.vector[j];
    ++i;
  }
  return m;
}

std::map<std::string, std::vector<std::size_t>> group_by_speaker(
    const EmbeddingTable &table) {
  std::map<std::string, std::vector<std::size_t>> groups;
  auto rows = table.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].speaker)
      throw std::invalid_argument("embedding '" + rows[i].segment_id +
                                  "' has no speaker label");
    groups[*rows[i].speaker].push_back(i);
  }
  return groups;
}

Matrix covariance(const Matrix &data, const Vector &mean) {
  Matrix centered = data.rowwise() - mean.transpose();
  return (centered.transpose() * centered) / static_cast<double>(data.rows());
}

Matrix floor_eigenvalues(const Matrix &sym, double floor) {
  Matrix s = 0.5 * (sym + sym.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  Vector values = eig.eigenvalues();
  if (values.minCoeff() >= floor) return s;
  values = values.cwiseMax(floor);
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

double ridge_floor(const Matrix &sym) {
  return kRidge * sym.trace() / static_cast<double>(sym.rows());
}

double log_det_spd(const Matrix &spd) {
  Eigen::LLT<Matrix> llt(spd);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("matrix is not positive definite");
  const Matrix &l = llt.matrixL();
  return 2.0 * l.diagonal().array().log().sum();
}

EmbeddingTable with_vectors(const EmbeddingTable &like, const Matrix &rows) {
  std::vector<EmbeddingRow> out;
  out.reserve(like.size());
  Eigen::Index i = 0;
  for (const EmbeddingRow &row : like.rows()) {
    Vector v = rows.row(i++).transpose();
    out.push_back({row.segment_id, row.speaker, to_std(v)});
  }
  return EmbeddingTable(static_cast<std::size_t>(rows.cols()), std::move(out));
}

}  // namespace sre::backend
