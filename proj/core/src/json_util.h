// Copyright 2026 The vqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Strict readers over nlohmann::json used by every document loader.

#ifndef VQC_SRC_JSON_UTIL_H_
#define VQC_SRC_JSON_UTIL_H_

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "vqc/diagnostics.h"

namespace vqc::internal {

using Json = nlohmann::ordered_json;

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string(what) + ": JSON syntax error at byte " +
                          std::to_string(e.byte) + ": " + e.what(),
                      e.byte);
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

inline void expect_object(const Json& j, std::string_view where) {
  if (!j.is_object()) {
    throw FormatError(std::string(where) + ": expected a JSON object");
  }
}

// Rejects keys outside `allowed` so typos in hand-written documents surface.
inline void check_keys(const Json& j,
                       std::initializer_list<std::string_view> allowed,
                       std::string_view where) {
  expect_object(j, where);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || a == key;
    if (!known) {
      throw FormatError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

inline std::optional<std::string> opt_string(const Json& j,
                                             std::string_view key,
                                             std::string_view where) {
  auto it = j.find(std::string(key));
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw FormatError(std::string(where) + ": '" + std::string(key) +
                      "' must be a string");
  }
  return it->get<std::string>();
}

inline std::string req_string(const Json& j, std::string_view key,
                              std::string_view where) {
  auto v = opt_string(j, key, where);
  if (!v) {
    throw FormatError(std::string(where) + ": missing '" + std::string(key) +
                      "'");
  }
  return *v;
}

inline bool opt_bool(const Json& j, std::string_view key,
                     std::string_view where, bool fallback = false) {
  auto it = j.find(std::string(key));
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) {
    throw FormatError(std::string(where) + ": '" + std::string(key) +
                      "' must be a boolean");
  }
  return it->get<bool>();
}

inline std::optional<long long> opt_int(const Json& j, std::string_view key,
                                        std::string_view where) {
  auto it = j.find(std::string(key));
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) {
    throw FormatError(std::string(where) + ": '" + std::string(key) +
                      "' must be an integer");
  }
  return it->get<long long>();
}

inline const Json& opt_array(const Json& j, std::string_view key,
                             std::string_view where) {
  static const Json kEmpty = Json::array();
  auto it = j.find(std::string(key));
  if (it == j.end() || it->is_null()) return kEmpty;
  if (!it->is_array()) {
    throw FormatError(std::string(where) + ": '" + std::string(key) +
                      "' must be an array");
  }
  return *it;
}

}  // namespace vqc::internal

#endif  // VQC_SRC_JSON_UTIL_H_
