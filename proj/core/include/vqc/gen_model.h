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

// SPARQL generation model: one GenNode per query node carrying the text
// fragments (triples, binds, filters, subquery texts) the renderer places
// into the final query.

#ifndef VQC_GEN_MODEL_H_
#define VQC_GEN_MODEL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vqc/ast.h"
#include "vqc/diagnostics.h"
#include "vqc/params.h"
#include "vqc/schema.h"
#include "vqc/symbol_table.h"
#include "vqc/variables.h"

namespace vqc {

struct AggregateVariable {
  std::string name;        // "?T_count"
  std::string expression;  // "COUNT(?TreatmentInWard)"
};

struct SelectBlock {
  std::vector<std::string> simple_variables;
  std::vector<AggregateVariable> aggregate_variables;
  std::vector<std::string> label_variables;
};

struct AttributeDefinition {
  std::string element;  // field or condition id
  std::vector<std::string> triple_patterns;
  std::vector<std::string> bind_clauses;
  std::optional<std::string> bound_clause;
  std::vector<std::string> filters;  // language filters of the value
  std::optional<std::string> values_clause;
  // Complete "{SELECT ...}" text for an aggregate inside a plain field.
  std::optional<std::string> local_subquery;
  bool require_values = false;
};

struct FilterDefinition {
  std::string element;
  std::vector<std::string> base_triples;  // placed outside the filter
  std::string filter_text;                // "FILTER(...)" or "FILTER EXISTS{...}"
};

struct DirectGroupBy {
  std::vector<std::string> groups;
  std::vector<std::string> triple_patterns;
};

struct OrderBy {
  std::vector<std::string> clauses;  // "?x" or "DESC(?x)"
  std::vector<std::string> triple_patterns;
  std::vector<std::string> variables;  // introduced, non-aggregated
};

struct GenNode {
  std::size_t index = 0;
  std::string id;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  NodeType node_type = NodeType::kData;
  EdgeType edge = EdgeType::kRequired;  // edge to the parent
  LinkMode mode = LinkMode::kRequired;
  bool subquery = false;
  bool existence_check = false;
  bool global = false;
  bool distinct = false;

  std::string class_instance;  // "?H" or a constant term
  std::string class_definition;
  std::string link_definition;
  // Host instance of a subquery link, selected inside the subquery.
  std::optional<std::string> host_variable;

  SelectBlock select;
  std::vector<AttributeDefinition> attributes;  // visual order
  std::vector<std::string> aggregation_base;
  std::vector<std::string> filters_as_triples;
  std::vector<FilterDefinition> filters;
  std::vector<std::string> reference_links;          // positive triples
  std::vector<std::string> negated_reference_links;  // triples
  // Label service triples ("?x rdfs:label ?xLabel").
  std::vector<std::string> label_triples;
  DirectGroupBy group_by;
  std::vector<std::string> implicit_group_by;
  OrderBy order_by;
  std::optional<long long> limit;
  std::optional<long long> offset;
  std::optional<std::string> full_sparql;
  bool full_sparql_is_subquery = false;
  // Block roots only: projection of the whole block and the patterns
  // re-binding names defined above the block.
  SelectBlock block_select;
  std::vector<std::string> grounding;
};

struct GenModel {
  std::vector<GenNode> nodes;  // same indices as the Ast
  Params params;

  const GenNode& root() const { return nodes.front(); }
};

// Builds the generation model. Reports errors (e.g. unsupported value
// scopes) to `diags`.
GenModel build_generation_model(const Ast& ast, const SymbolTable& st,
                                const VariableMap& vm, const Params& params,
                                const Schema& schema, Diagnostics& diags);

// Applies the string literal conversion parameter to comparisons between
// xsd:string data properties and string literals.
Expr convert_string_literal_comparison(const Expr& e, const Params& params);

// Text of a model (used by `explain --stage model`).
std::string dump_generation_model(const GenModel& g);

}  // namespace vqc

#endif  // VQC_GEN_MODEL_H_
