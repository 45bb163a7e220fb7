// core/src/backend/pipeline.cc

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


#include "sre/backend/pipeline.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sre::backend {

std::string_view to_string(ScoringMethod m) {
  return m == ScoringMethod::kPlda ? "plda" : "cosine";
}

std::optional<ScoringMethod> parse_scoring_method(std::string_view s) {
  if (s == "plda") return ScoringMethod::kPlda;
  if (s == "cosine") return ScoringMethod::kCosine;
  return std::nullopt;
}

Matrix transform_rows(const BackendModel &model, const Matrix &rows) {
  Matrix out = length_norm_rows(model.whitener.apply_rows(rows));
  if (model.lda) out = model.lda->apply_rows(out);
  return out;
}

Vector transform(const BackendModel &model, const Vector &x) {
  Vector out = length_norm(model.whitener.apply(x));
  if (model.lda) out = model.lda->apply(out);
  return out;
}

EmbeddingTable transform(const BackendModel &model, const EmbeddingTable &table) {
  if (table.dim() != model.input_dim())
    throw std::invalid_argument("embeddings have dimension " + std::to_string(table.dim()) +
                                ", backend expects " + std::to_string(model.input_dim()));
  return with_vectors(table, transform_rows(model, to_matrix(table)));
}

BackendModel fit_backend(const EmbeddingTable &train,
                         const std::optional<EmbeddingTable> &indomain,
                         const BackendConfig &config) {
  if (train.empty()) throw std::invalid_argument("backend: empty training table");
  if (indomain && indomain->dim() != train.dim())
    throw std::invalid_argument("backend: in-domain dimension " +
                                std::to_string(indomain->dim()) + " differs from training " +
                                std::to_string(train.dim()));
  if (!(config.map_alpha >= 0.0 && config.map_alpha <= 1.0))
    throw std::invalid_argument("backend: MAP alpha must be in [0, 1]");

  BackendModel model;
  model.config = config;
  model.whitener = fit_whitener(indomain ? *indomain : train);

  const auto groups = group_by_speaker(train);
  Matrix rows = length_norm_rows(model.whitener.apply_rows(to_matrix(train)));
  if (config.lda_dim > 0) {
    if (groups.size() < 2) throw std::invalid_argument("backend: LDA needs at least 2 speakers");
    std::size_t k = std::min({config.lda_dim, train.dim(), groups.size() - 1});
    model.config.lda_dim = k;
    model.lda = fit_lda(rows, groups, k);
    rows = model.lda->apply_rows(rows);
  }

  PldaFitResult fit = fit_plda_em(rows, groups, config.plda);
  model.plda = std::move(fit.model);
  model.plda_log_likelihood = std::move(fit.log_likelihood);

  if (indomain && config.map_alpha > 0.0) {
    Matrix in_rows = transform_rows(model, to_matrix(*indomain));
    PldaModel in_model = fit_plda_em(in_rows, group_by_speaker(*indomain), config.plda).model;
    model.plda = map_adapt(model.plda, in_model, config.map_alpha);
    model.adapted = true;
  }
  return model;
}

namespace {

// Transformed vectors looked up by segment id, computed on first use.
class VectorCache {
 public:
  VectorCache(const BackendModel &model, const EmbeddingTable &table,
              const PldaScorer *scorer)
      : model_(model), table_(table), scorer_(scorer) {}

  const Vector &get(const std::string &segment_id) {
    auto it = cache_.find(segment_id);
    if (it != cache_.end()) return it->second;
    const EmbeddingRow *row = table_.find(segment_id);
    if (!row) throw std::invalid_argument("no embedding for segment '" + segment_id + "'");
    Vector v = transform(model_, to_vector(row->vector));
    if (scorer_) v = scorer_->project(v);
    return cache_.emplace(segment_id, std::move(v)).first->second;
  }

 private:
  const BackendModel &model_;
  const EmbeddingTable &table_;
  const PldaScorer *scorer_;
  std::map<std::string, Vector, std::less<>> cache_;
};

// Enrollment side of a trial: PLDA statistics or the averaged vector.
struct Enrolled {
  PldaScorer::Stats stats;
  Vector mean;
};

double cosine(const Vector &a, const Vector &b) {
  return cosine_score(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
                      std::span<const double>(b.data(), static_cast<std::size_t>(b.size())));
}

}  // namespace

ScoreSet score_trials(const BackendModel &model, std::span<const TrialId> trials,
                      const ScoringInputs &in) {
  if (!in.embeddings || !in.enrollment)
    throw std::invalid_argument("score_trials: embeddings and enrollment are required");
  if (in.embeddings->dim() != model.input_dim())
    throw std::invalid_argument("embeddings have dimension " +
                                std::to_string(in.embeddings->dim()) + ", backend expects " +
                                std::to_string(model.input_dim()));
  const bool plda = model.config.scoring == ScoringMethod::kPlda;
  std::optional<PldaScorer> scorer;
  if (plda) scorer.emplace(model.plda);
  const PldaScorer *sp = scorer ? &*scorer : nullptr;
  VectorCache vectors(model, *in.embeddings, sp);

  auto score_pair = [&](const Enrolled &e, const Vector &t) {
    return plda ? scorer->llr(e.stats, t) : cosine(e.mean, t);
  };
  auto single = [&](const Vector &v) {
    Enrolled e;
    if (plda) e.stats = {1, v};
    e.mean = v;
    return e;
  };

  std::map<std::string, Enrolled, std::less<>> enrolled;
  auto enroll = [&](const std::string &model_id) -> const Enrolled & {
    auto it = enrolled.find(model_id);
    if (it != enrolled.end()) return it->second;
    auto m = in.enrollment->find(model_id);
    if (m == in.enrollment->end() || m->second.empty())
      throw std::invalid_argument("no enrollment segments for model '" + model_id + "'");
    std::vector<Vector> vs;
    for (const std::string &seg : m->second) vs.push_back(vectors.get(seg));
    Enrolled e;
    if (plda) e.stats = scorer->stats(vs);
    e.mean = Vector::Zero(vs.front().size());
    for (const Vector &v : vs) e.mean += v;
    e.mean /= static_cast<double>(vs.size());
    return enrolled.emplace(model_id, std::move(e)).first->second;
  };

  // Cohort statistics for s-norm.
  std::vector<Vector> cohort;
  std::size_t top_k = 0;
  if (model.config.snorm) {
    if (!in.cohort || in.cohort->size() < 2)
      throw std::invalid_argument("s-norm needs a cohort of at least 2 segments");
    VectorCache cohort_vectors(model, *in.cohort, sp);
    for (const EmbeddingRow &row : in.cohort->rows())
      cohort.push_back(cohort_vectors.get(row.segment_id));
    top_k = std::min(model.config.snorm_top_k, cohort.size());
  }
  std::map<std::string, CohortStats, std::less<>> enroll_cohort, test_cohort;
  auto cohort_stats = [&](const Enrolled &e) {
    std::vector<double> s;
    s.reserve(cohort.size());
    for (const Vector &c : cohort) s.push_back(score_pair(e, c));
    return top_k_stats(s, top_k);
  };

  std::vector<ScoreEntry> out;
  out.reserve(trials.size());
  for (const TrialId &id : trials) {
    const Enrolled &e = enroll(id.model_id);
    const Vector &t = vectors.get(id.segment_id);
    double s = score_pair(e, t);
    if (model.config.snorm) {
      auto ec = enroll_cohort.find(id.model_id);
      if (ec == enroll_cohort.end())
        ec = enroll_cohort.emplace(id.model_id, cohort_stats(e)).first;
      auto tc = test_cohort.find(id.segment_id);
      if (tc == test_cohort.end())
        tc = test_cohort.emplace(id.segment_id, cohort_stats(single(t))).first;
      s = adaptive_snorm(s, ec->second, tc->second);
    }
    if (in.calibration) s = in.calibration->apply(s);
    out.push_back({id, s});
  }
  return ScoreSet(std::move(out));
}

}  // namespace sre::backend
