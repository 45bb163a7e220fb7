// sre/backend/model_io.h

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


#ifndef SRE_BACKEND_MODEL_IO_H_
#define SRE_BACKEND_MODEL_IO_H_

#include <filesystem>
#include <string>

#include "sre/backend/pipeline.h"

namespace sre::backend {

inline constexpr std::string_view kModelFormat = "sre-backend-model";
inline constexpr std::string_view kCalibrationFormat = "sre-calibration";
inline constexpr int kModelVersion = 1;

/// JSON text; matrices are arrays of rows, numbers shortest round-trip.
std::string model_to_json(const BackendModel &model);
/// Throws std::invalid_argument on a wrong format, version or shape.
BackendModel model_from_json(const std::string &text);

std::string calibration_to_json(const CalibrationMap &map);
CalibrationMap calibration_from_json(const std::string &text);

void save_model(const BackendModel &model, const std::filesystem::path &path);
BackendModel load_model(const std::filesystem::path &path);
void save_calibration(const CalibrationMap &map, const std::filesystem::path &path);
CalibrationMap load_calibration(const std::filesystem::path &path);

}  // namespace sre::backend

#endif  // SRE_BACKEND_MODEL_IO_H_
