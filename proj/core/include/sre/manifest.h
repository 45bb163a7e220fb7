// sre/manifest.h

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


#ifndef SRE_MANIFEST_H_
#define SRE_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sre {

/// Library version, "major.minor.patch".
std::string_view version();

/// Lower-case hex SHA-256 of a byte string or a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path &path);

/// Provenance record written next to every command's results. It is the
/// only output that carries a timestamp.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  /// Input path -> SHA-256.
  std::map<std::string, std::string> inputs;
  /// Output file names (relative to the output directory).
  std::vector<std::string> outputs;
  /// Effective configuration, serialized JSON.
  std::string config_json = "{}";
  std::map<std::string, std::uint64_t> seeds;
  std::string timestamp;  // ISO 8601 UTC

  void add_input(const std::filesystem::path &path);
  std::string to_json() const;
};

/// Current UTC time as YYYY-MM-DDThh:mm:ssZ.
std::string utc_timestamp();

}  // namespace sre

#endif  // SRE_MANIFEST_H_
