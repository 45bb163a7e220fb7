// sre/text_io.h

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

// Small helpers shared by the TSV readers and writers.

#ifndef SRE_TEXT_IO_H_
#define SRE_TEXT_IO_H_

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sre {

/// Splits on every '\t'; empty fields are kept.
std::vector<std::string_view> split_tabs(std::string_view line);

/// Full-token decimal parse (scientific notation accepted). Returns nullopt
/// for anything that is not a number; "nan"/"inf" parse and are returned as
/// such so callers can report them separately.
std::optional<double> parse_double(std::string_view token);

/// Shortest decimal representation that reads back to the identical double.
std::string format_double(double value);

/// Opens for reading or throws std::runtime_error naming the path.
std::ifstream open_input(const std::filesystem::path &path);
/// Opens for writing (truncating) or throws std::runtime_error.
std::ofstream open_output(const std::filesystem::path &path);

/// Reads a whole file into memory.
std::string read_file(const std::filesystem::path &path);

/// Removes a trailing '\r' so CRLF files read like LF files.
inline std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace sre

#endif  // SRE_TEXT_IO_H_
