// sre/backend/linalg.h

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

#ifndef SRE_BACKEND_LINALG_H_
#define SRE_BACKEND_LINALG_H_

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sre/trial_data.h"

namespace sre::backend {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative ridge used on every covariance estimate: eigenvalues are
/// floored at kRidge * trace / d.
inline constexpr double kRidge = 1e-6;

Vector to_vector(std::span<const double> v);
std::vector<double> to_std(const Vector &v);

/// One row per embedding.
Matrix to_matrix(const EmbeddingTable &table);

/// Row indices grouped by speaker label, speakers in sorted order. Throws
/// std::invalid_argument if a row is unlabeled.
std::map<std::string, std::vector<std::size_t>> group_by_speaker(
    const EmbeddingTable &table);

/// Maximum-likelihood (1/n) covariance of the rows of `data`.
Matrix covariance(const Matrix &data, const Vector &mean);

/// Symmetrizes and raises eigenvalues below `floor` to `floor`.
Matrix floor_eigenvalues(const Matrix &sym, double floor);

/// kRidge * trace(sym) / d.
double ridge_floor(const Matrix &sym);

/// log |det| of a symmetric positive definite matrix (via LLT).
double log_det_spd(const Matrix &spd);

/// Builds a table with the same ids/labels and new vectors (one per row).
EmbeddingTable with_vectors(const EmbeddingTable &like, const Matrix &rows);

}  // namespace sre::backend

#endif  // SRE_BACKEND_LINALG_H_
