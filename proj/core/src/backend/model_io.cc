// core/src/backend/model_io.cc

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


#include "sre/backend/model_io.h"

#include <stdexcept>

#include "json.hpp"
#include "sre/text_io.h"

namespace sre::backend {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_json(const Matrix &m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector &v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

const Json &field(const Json &j, const char *name) {
  if (!j.is_object() || !j.contains(name))
    throw std::invalid_argument(std::string("model JSON: missing field '") + name + "'");
  return j.at(name);
}

double number(const Json &j, const char *what) {
  if (!j.is_number()) throw std::invalid_argument(std::string("model JSON: '") + what + "' is not a number");
  return j.get<double>();
}

Vector vector_from(const Json &j, const char *what) {
  if (!j.is_array()) throw std::invalid_argument(std::string("model JSON: '") + what + "' is not an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], what);
  return v;
}

Matrix matrix_from(const Json &j, const char *what, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw std::invalid_argument(std::string("model JSON: '") + what + "' must have " +
                                std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json &row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument(std::string("model JSON: row of '") + what + "' must have " +
                                  std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = number(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

void check_header(const Json &j, std::string_view format) {
  if (field(j, "format") != format)
    throw std::invalid_argument("JSON document is not a " + std::string(format));
  if (field(j, "version") != kModelVersion)
    throw std::invalid_argument("unsupported " + std::string(format) + " version");
}

Json calibration_json(const CalibrationMap &c) {
  Json j;
  j["a"] = c.a;
  j["b"] = c.b;
  j["effective_prior"] = c.effective_prior;
  j["converged"] = c.converged;
  j["separable"] = c.separable;
  j["order_preserving"] = c.order_preserving();
  j["iterations"] = c.iterations;
  j["gradient_norm"] = c.gradient_norm;
  return j;
}

Json parse(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string model_to_json(const BackendModel &m) {
  Json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  Json cfg;
  cfg["scoring"] = to_string(m.config.scoring);
  cfg["lda_dim"] = m.config.lda_dim;
  cfg["map_alpha"] = m.config.map_alpha;
  cfg["snorm"] = m.config.snorm;
  cfg["snorm_top_k"] = m.config.snorm_top_k;
  cfg["plda_max_iterations"] = m.config.plda.max_iterations;
  cfg["plda_tolerance"] = m.config.plda.tolerance;
  j["config"] = std::move(cfg);
  j["input_dim"] = m.input_dim();
  j["whitener"] = {{"mean", vector_json(m.whitener.mean)},
                   {"transform", matrix_json(m.whitener.transform)}};
  if (m.lda)
    j["lda"] = {{"basis", matrix_json(m.lda->basis)},
                {"eigenvalues", vector_json(m.lda->eigenvalues)}};
  else
    j["lda"] = nullptr;
  j["plda"] = {{"mu", vector_json(m.plda.mu)},
               {"B", matrix_json(m.plda.B)},
               {"W", matrix_json(m.plda.W)}};
  j["adapted"] = m.adapted;
  j["plda_log_likelihood"] = m.plda_log_likelihood;
  return j.dump(2) + "\n";
}

BackendModel model_from_json(const std::string &text) {
  const Json j = parse(text);
  check_header(j, kModelFormat);
  BackendModel m;
  const Json &cfg = field(j, "config");
  auto method = parse_scoring_method(field(cfg, "scoring").get<std::string>());
  if (!method) throw std::invalid_argument("model JSON: unknown scoring method");
  m.config.scoring = *method;
  m.config.lda_dim = field(cfg, "lda_dim").get<std::size_t>();
  m.config.map_alpha = number(field(cfg, "map_alpha"), "map_alpha");
  m.config.snorm = field(cfg, "snorm").get<bool>();
  m.config.snorm_top_k = field(cfg, "snorm_top_k").get<std::size_t>();
  m.config.plda.max_iterations = field(cfg, "plda_max_iterations").get<int>();
  m.config.plda.tolerance = number(field(cfg, "plda_tolerance"), "plda_tolerance");

  const auto d = static_cast<Eigen::Index>(field(j, "input_dim").get<std::size_t>());
  if (d <= 0) throw std::invalid_argument("model JSON: input_dim must be positive");
  const Json &w = field(j, "whitener");
  m.whitener.mean = vector_from(field(w, "mean"), "whitener.mean");
  if (m.whitener.mean.size() != d)
    throw std::invalid_argument("model JSON: whitener mean has the wrong dimension");
  m.whitener.transform = matrix_from(field(w, "transform"), "whitener.transform", d, d);

  Eigen::Index k = d;
  const Json &lda = field(j, "lda");
  if (!lda.is_null()) {
    LdaProjection p;
    p.eigenvalues = vector_from(field(lda, "eigenvalues"), "lda.eigenvalues");
    k = p.eigenvalues.size();
    if (k == 0 || k > d) throw std::invalid_argument("model JSON: bad LDA dimension");
    p.basis = matrix_from(field(lda, "basis"), "lda.basis", k, d);
    m.lda = std::move(p);
  }
  const Json &plda = field(j, "plda");
  m.plda.mu = vector_from(field(plda, "mu"), "plda.mu");
  if (m.plda.mu.size() != k)
    throw std::invalid_argument("model JSON: PLDA dimension does not match the projection");
  m.plda.B = matrix_from(field(plda, "B"), "plda.B", k, k);
  m.plda.W = matrix_from(field(plda, "W"), "plda.W", k, k);
  check_model(m.plda);
  m.adapted = field(j, "adapted").get<bool>();
  m.plda_log_likelihood = field(j, "plda_log_likelihood").get<std::vector<double>>();
  return m;
}

std::string calibration_to_json(const CalibrationMap &map) {
  Json j;
  j["format"] = kCalibrationFormat;
  j["version"] = kModelVersion;
  const Json body = calibration_json(map);
  for (auto &[key, value] : body.items()) j[key] = value;
  return j.dump(2) + "\n";
}

CalibrationMap calibration_from_json(const std::string &text) {
  const Json j = parse(text);
  check_header(j, kCalibrationFormat);
  CalibrationMap c;
  c.a = number(field(j, "a"), "a");
  c.b = number(field(j, "b"), "b");
  c.effective_prior = number(field(j, "effective_prior"), "effective_prior");
  c.converged = field(j, "converged").get<bool>();
  c.separable = field(j, "separable").get<bool>();
  c.iterations = field(j, "iterations").get<int>();
  c.gradient_norm = number(field(j, "gradient_norm"), "gradient_norm");
  return c;
}

void save_model(const BackendModel &model, const std::filesystem::path &path) {
  auto out = open_output(path);
  out << model_to_json(model);
}

BackendModel load_model(const std::filesystem::path &path) {
  return model_from_json(read_file(path));
}

void save_calibration(const CalibrationMap &map, const std::filesystem::path &path) {
  auto out = open_output(path);
  out << calibration_to_json(map);
}

CalibrationMap load_calibration(const std::filesystem::path &path) {
  return calibration_from_json(read_file(path));
}

}  // namespace sre::backend
