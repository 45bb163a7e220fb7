// core/src/manifest.cc

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


#include "sre/manifest.h"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <memory>
#include <stdexcept>

#include "json.hpp"
#include "sre/text_io.h"

#ifndef SRE_VERSION
#define SRE_VERSION "0.0.0"
#endif

namespace sre {

std::string_view version() { return SRE_VERSION; }

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw std::runtime_error("SHA-256 computation failed");
  static const char *hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path &path) {
  return sha256_hex(read_file(path));
}

void RunManifest::add_input(const std::filesystem::path &path) {
  inputs[path.string()] = sha256_file(path);
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "sre-run-manifest";
  j["version"] = 1;
  j["tool_version"] = std::string(sre::version());
  j["command"] = command;
  j["arguments"] = arguments;
  nlohmann::ordered_json in = nlohmann::ordered_json::object();
  for (const auto &[path, digest] : inputs) in[path] = {{"sha256", digest}};
  j["inputs"] = std::move(in);
  j["outputs"] = outputs;
  j["config"] = nlohmann::ordered_json::parse(config_json);
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto &[name, value] : seeds) s[name] = value;
  j["seeds"] = std::move(s);
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace sre
