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

// Environment parameters that shape the generated SPARQL.

#ifndef VQC_PARAMS_H_
#define VQC_PARAMS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace vqc {

class Schema;

enum class StringLiteralConversion { kSimple, kTyped, kOff };
enum class QueryEngine { kGeneral, kVirtuoso };

struct Params {
  std::string dss_schema;
  StringLiteralConversion string_literal_conversion =
      StringLiteralConversion::kSimple;
  QueryEngine query_engine_type = QueryEngine::kGeneral;
  std::string grouping_separator = ", ";
  // Prefixed name or absolute IRI; unset means rdf:type ("a").
  std::optional<std::string> direct_class_membership_role;
  std::optional<std::string> indirect_class_membership_role;
  bool enable_wikibase_label_services = false;

  bool operator==(const Params&) const = default;
};

// Parses the JSON params file; all keys optional. Throws FormatError.
Params parse_params(std::string_view document);
Params load_params(const std::filesystem::path& path);
std::string serialize_params(const Params& p);

std::string_view to_string(StringLiteralConversion c);
std::string_view to_string(QueryEngine e);

}  // namespace vqc

#endif  // VQC_PARAMS_H_
