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

#include "vqc/params.h"

#include "json_util.h"

namespace vqc {

using internal::Json;

Params parse_params(std::string_view document) {
  constexpr std::string_view kWhere = "params";
  Json j = internal::parse_json(document, kWhere);
  internal::check_keys(
      j,
      {"dssSchema", "stringLiteralConversion", "queryEngineType",
       "groupingSeparator", "directClassMembershipRole",
       "indirectClassMembershipRole", "enableWikibaseLabelServices"},
      kWhere);
  Params p;
  p.dss_schema = internal::opt_string(j, "dssSchema", kWhere).value_or("");
  if (auto c = internal::opt_string(j, "stringLiteralConversion", kWhere)) {
    if (*c == "SIMPLE") {
      p.string_literal_conversion = StringLiteralConversion::kSimple;
    } else if (*c == "TYPED") {
      p.string_literal_conversion = StringLiteralConversion::kTyped;
    } else if (*c == "OFF") {
      p.string_literal_conversion = StringLiteralConversion::kOff;
    } else {
      throw FormatError("params: unknown stringLiteralConversion '" + *c +
                        "'");
    }
  }
  if (auto e = internal::opt_string(j, "queryEngineType", kWhere)) {
    if (*e == "GENERAL") {
      p.query_engine_type = QueryEngine::kGeneral;
    } else if (*e == "VIRTUOSO") {
      p.query_engine_type = QueryEngine::kVirtuoso;
    } else {
      throw FormatError("params: unknown queryEngineType '" + *e + "'");
    }
  }
  if (auto it = j.find("groupingSeparator"); it != j.end()) {
    if (!it->is_string()) {
      throw FormatError("params: 'groupingSeparator' must be a string");
    }
    p.grouping_separator = it->get<std::string>();
  }
  p.direct_class_membership_role =
      internal::opt_string(j, "directClassMembershipRole", kWhere);
  p.indirect_class_membership_role =
      internal::opt_string(j, "indirectClassMembershipRole", kWhere);
  p.enable_wikibase_label_services =
      internal::opt_bool(j, "enableWikibaseLabelServices", kWhere);
  return p;
}

Params load_params(const std::filesystem::path& path) {
  return parse_params(internal::read_file(path));
}

std::string serialize_params(const Params& p) {
  Json j;
  j["dssSchema"] = p.dss_schema;
  j["stringLiteralConversion"] = to_string(p.string_literal_conversion);
  j["queryEngineType"] = to_string(p.query_engine_type);
  j["groupingSeparator"] = p.grouping_separator;
  if (p.direct_class_membership_role) {
    j["directClassMembershipRole"] = *p.direct_class_membership_role;
  }
  if (p.indirect_class_membership_role) {
    j["indirectClassMembershipRole"] = *p.indirect_class_membership_role;
  }
  j["enableWikibaseLabelServices"] = p.enable_wikibase_label_services;
  return j.dump(2) + "\n";
}

std::string_view to_string(StringLiteralConversion c) {
  switch (c) {
    case StringLiteralConversion::kSimple: return "SIMPLE";
    case StringLiteralConversion::kTyped: return "TYPED";
    case StringLiteralConversion::kOff: return "OFF";
  }
  return "?";
}

std::string_view to_string(QueryEngine e) {
  return e == QueryEngine::kVirtuoso ? "VIRTUOSO" : "GENERAL";
}

}  // namespace vqc
