// sre/backend/whitener.h

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

#ifndef SRE_BACKEND_WHITENER_H_
#define SRE_BACKEND_WHITENER_H_

#include "sre/backend/linalg.h"

namespace sre::backend {

/// x -> transform * (x - mean), with transform = C^{-1/2} (symmetric) for
/// the training covariance C.
struct Whitener {
  Vector mean;
  Matrix transform;

  Vector apply(const Vector &x) const { return transform * (x - mean); }
  /// Rows are samples.
  Matrix apply_rows(const Matrix &rows) const;
};

/// Needs at least d + 1 rows. Throws std::invalid_argument when the
/// covariance is zero (nothing to floor against) or rows are too few.
Whitener fit_whitener(const EmbeddingTable &table);
Whitener fit_whitener(const Matrix &rows);

/// v / ||v||_2; std::invalid_argument on a zero vector.
Vector length_norm(const Vector &v);
std::vector<double> length_norm(std::span<const double> v);
/// Row-wise length_norm.
Matrix length_norm_rows(const Matrix &rows);

}  // namespace sre::backend

#endif  // SRE_BACKEND_WHITENER_H_
