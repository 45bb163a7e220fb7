// sre/backend/lda.h

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

#ifndef SRE_BACKEND_LDA_H_
#define SRE_BACKEND_LDA_H_

#include "sre/backend/linalg.h"

namespace sre::backend {

inline constexpr std::size_t kDefaultLdaDim = 250;

/// Rows of `basis` (k x d) are generalized eigenvectors of the between- and
/// within-class scatter, largest eigenvalue first, scaled to unit length
/// under the within-class metric.
struct LdaProjection {
  Matrix basis;
  Vector eigenvalues;  // descending, length k

  Vector apply(const Vector &x) const { return basis * x; }
  Matrix apply_rows(const Matrix &rows) const { return rows * basis.transpose(); }
};

/// Needs >= 2 speakers and out_dim <= min(d, #speakers - 1); throws
/// std::invalid_argument otherwise.
LdaProjection fit_lda(const EmbeddingTable &table, std::size_t out_dim);
LdaProjection fit_lda(const Matrix &rows,
                      const std::map<std::string, std::vector<std::size_t>> &groups,
                      std::size_t out_dim);

}  // namespace sre::backend

#endif  // SRE_BACKEND_LDA_H_
