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

// The canonical serialized visual query: nodes with their compartments
// and the links between them. Format version 1.

#ifndef VQC_QUERY_DOCUMENT_H_
#define VQC_QUERY_DOCUMENT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vqc/diagnostics.h"

namespace vqc {

class Schema;

inline constexpr int kQueryFormatVersion = 1;

enum class NodeType { kData, kUnit, kUnion };
enum class LabelService { kNone, kLabel, kAltLabel, kDescription };
enum class ConditionForm { kAuto, kPlainFilter, kFilterExists };
enum class LinkMode { kRequired, kOptional, kNegated };
enum class LinkKind { kJoin, kSubquery, kReference };

struct FieldRecord {
  std::string id;
  std::string expr;
  std::optional<std::string> alias;
  bool require_values = false;  // {+}
  bool helper = false;          // {h}
  LabelService label_service = LabelService::kNone;
  int order = 0;

  bool operator==(const FieldRecord&) const = default;
};

struct AggregationRecord {
  std::string id;
  std::string expr;
  std::optional<std::string> alias;
  int order = 0;

  bool operator==(const AggregationRecord&) const = default;
};

struct ConditionRecord {
  std::string id;
  std::string expr;
  ConditionForm form = ConditionForm::kAuto;
  int order = 0;

  bool operator==(const ConditionRecord&) const = default;
};

struct OrderRecord {
  std::string id;
  std::string expr;
  bool descending = false;

  bool operator==(const OrderRecord&) const = default;
};

struct NodeRecord {
  std::string id;
  bool main = false;
  NodeType node_type = NodeType::kData;
  std::optional<std::string> class_name;
  std::optional<std::string> class_variable;  // "?C" or "??C"
  std::optional<std::string> instance_alias;
  std::optional<std::string> instance_resource;
  bool indirect_membership = false;
  bool distinct = false;
  std::vector<FieldRecord> fields;
  std::vector<AggregationRecord> aggregations;
  std::vector<ConditionRecord> conditions;
  std::vector<std::string> group_by;
  std::vector<OrderRecord> order_by;
  std::optional<long long> limit;
  std::optional<long long> offset;
  std::optional<std::string> full_sparql;
  bool full_sparql_is_subquery = false;

  bool operator==(const NodeRecord&) const = default;
};

struct LinkRecord {
  std::string id;
  std::string source;
  std::string target;
  std::string path;  // property path, "?p"/"??p", "++" or "=="
  bool inverse = false;
  LinkMode mode = LinkMode::kRequired;
  LinkKind kind = LinkKind::kJoin;
  bool existence_check = false;
  bool global = false;
  int order = 0;

  bool operator==(const LinkRecord&) const = default;
};

struct QueryDocument {
  std::string schema_name;
  std::vector<NodeRecord> nodes;
  std::vector<LinkRecord> links;

  const NodeRecord* find_node(std::string_view id) const;
  const NodeRecord* main_node() const;

  bool operator==(const QueryDocument&) const = default;
};

// Parses the JSON document. Compartments are sorted by their `order`
// field (stable, so equal orders keep document order). Elements without
// an explicit `id` get one derived from their owner and position. Throws
// FormatError on syntax errors, unknown keys/enum values, duplicate ids or
// a main-node count other than one.
QueryDocument parse_query_document(std::string_view document);
QueryDocument load_query_document(const std::filesystem::path& path);

// Canonical JSON form; parse_query_document(serialize(q)) == q.
std::string serialize_query_document(const QueryDocument& q);

// Structural checks: spanning tree rooted at the main node, reference link
// direction, local-subquery restrictions, expression syntax and control
// node constraints. Never throws.
Diagnostics validate_document(const QueryDocument& q, const Schema& schema);

std::string_view to_string(NodeType t);
std::string_view to_string(LinkMode m);
std::string_view to_string(LinkKind k);
std::string_view to_string(LabelService s);
std::string_view to_string(ConditionForm f);

}  // namespace vqc

#endif  // VQC_QUERY_DOCUMENT_H_
