// sre/backend/pipeline.h

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


#ifndef SRE_BACKEND_PIPELINE_H_
#define SRE_BACKEND_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "sre/backend/calibration.h"
#include "sre/backend/lda.h"
#include "sre/backend/plda.h"
#include "sre/backend/scoring.h"
#include "sre/backend/whitener.h"

namespace sre::backend {

enum class ScoringMethod { kPlda, kCosine };
std::string_view to_string(ScoringMethod m);
std::optional<ScoringMethod> parse_scoring_method(std::string_view s);

struct BackendConfig {
  ScoringMethod scoring = ScoringMethod::kPlda;
  /// Requested LDA output dimension; clamped to min(d, #speakers - 1).
  /// 0 disables LDA.
  std::size_t lda_dim = kDefaultLdaDim;
  double map_alpha = 0.5;
  bool snorm = false;
  std::size_t snorm_top_k = kDefaultSnormTopK;
  PldaFitOptions plda;
};

/// Fitted chain: whiten -> length-norm -> LDA -> PLDA.
struct BackendModel {
  BackendConfig config;
  Whitener whitener;
  std::optional<LdaProjection> lda;
  PldaModel plda;
  /// True when the PLDA model was MAP-adapted to in-domain data.
  bool adapted = false;
  std::vector<double> plda_log_likelihood;

  std::size_t input_dim() const { return static_cast<std::size_t>(whitener.mean.size()); }
  std::size_t output_dim() const { return plda.dim(); }
};

/// The whitener is fitted on `indomain` when given (else on `train`); LDA
/// and PLDA on `train`; the PLDA model is then MAP-adapted to `indomain`.
BackendModel fit_backend(const EmbeddingTable &train,
                         const std::optional<EmbeddingTable> &indomain,
                         const BackendConfig &config);

/// Applies every stage before PLDA.
Vector transform(const BackendModel &model, const Vector &x);
Matrix transform_rows(const BackendModel &model, const Matrix &rows);
EmbeddingTable transform(const BackendModel &model, const EmbeddingTable &table);

struct ScoringInputs {
  const EmbeddingTable *embeddings = nullptr;  // enrollment and test segments
  const EnrollmentMap *enrollment = nullptr;
  /// Used only when the model's config enables s-norm.
  const EmbeddingTable *cohort = nullptr;
  const CalibrationMap *calibration = nullptr;
};

/// One score per trial. Throws std::invalid_argument on a model without an
/// enrollment entry, a missing segment, or s-norm without a cohort of at
/// least 2 segments.
ScoreSet score_trials(const BackendModel &model, std::span<const TrialId> trials,
                      const ScoringInputs &inputs);

}  // namespace sre::backend

#endif  // SRE_BACKEND_PIPELINE_H_
