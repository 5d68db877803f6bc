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

// Query abstract syntax tree. Stage one mirrors the document structure and
// resolves class names; stage two (complete_ast) parses and resolves all
// expressions and produces the symbol table.

#ifndef VQC_AST_H_
#define VQC_AST_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vqc/diagnostics.h"
#include "vqc/expr.h"
#include "vqc/query_document.h"
#include "vqc/schema.h"

namespace vqc {

struct NodeInfo {
  std::string id;
  bool main = false;
  NodeType node_type = NodeType::kData;
  // Class identification; raw text kept for unknown classes.
  std::optional<std::string> class_text;
  std::string local_name;
  std::string iri;
  std::string prefix;
  bool is_local = false;
  std::optional<EntityRef> class_entity;
  std::string class_term;  // SPARQL term for the class
  std::optional<std::string> instance_alias;
  std::optional<std::string> instance_resource;
  std::string instance_term;  // SPARQL term for instance_resource
  std::optional<std::string> class_variable;  // name without '?'
  bool class_variable_hidden = false;
  bool indirect_membership = false;
  bool distinct = false;
};

struct LinkInfo {
  std::string id;
  std::string local_name;  // path text as written
  LinkMode mode = LinkMode::kRequired;
  LinkKind kind = LinkKind::kJoin;
  bool inverse = false;
  bool is_free = false;           // "++"
  bool is_same_instance = false;  // "=="
  std::optional<std::string> path_variable;  // name without '?'
  bool path_variable_hidden = false;
  bool existence_check = false;
  bool global = false;
  // Stage two: path with document-level inversion folded in.
  std::optional<Expr> parsed_path;
};

struct AstField {
  std::string id;
  std::string expr;
  std::optional<std::string> alias;
  bool require_values = false;
  bool helper = false;
  LabelService label_service = LabelService::kNone;
  int order = 0;
  std::optional<Expr> parsed_exp;
};

struct AstAggregation {
  std::string id;
  std::string expr;
  std::optional<std::string> alias;
  int order = 0;
  std::optional<Expr> parsed_exp;
};

struct AstCondition {
  std::string id;
  std::string expr;
  ConditionForm form = ConditionForm::kAuto;
  int order = 0;
  std::optional<Expr> parsed_exp;
};

struct AstGrouping {
  std::string id;
  std::string expr;
  std::optional<Expr> parsed_exp;
};

struct AstOrdering {
  std::string id;
  std::string expr;
  bool descending = false;
  std::optional<Expr> parsed_exp;
};

struct AstReferenceLink {
  std::string id;
  std::string source;  // node id
  std::string target;  // node id
  std::string path;
  bool inverse = false;
  LinkMode mode = LinkMode::kRequired;  // required or negated
  std::optional<std::string> path_variable;
  bool path_variable_hidden = false;
  std::optional<Expr> parsed_path;
};

// Scope-relevant type of the edge from a node to its parent.
enum class EdgeType { kRequired, kOptional, kNegated, kUnion, kSubquery };

struct AstNode {
  std::size_t index = 0;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;  // in link order
  NodeInfo info;
  std::optional<LinkInfo> link;  // unset for the root
  std::vector<AstField> fields;
  std::vector<AstAggregation> aggregations;
  std::vector<AstCondition> conditions;
  std::vector<AstGrouping> groupings;
  std::vector<AstOrdering> orderings;
  std::vector<AstReferenceLink> reference_links;  // outgoing
  std::optional<long long> limit;
  std::optional<long long> offset;
  std::optional<std::string> full_sparql;
  bool full_sparql_is_subquery = false;

  bool is_root() const { return !parent.has_value(); }
  bool is_subquery() const {
    return link && link->kind == LinkKind::kSubquery;
  }
};

class Ast {
 public:
  const AstNode& root() const { return nodes_.front(); }
  const std::vector<AstNode>& nodes() const { return nodes_; }
  std::vector<AstNode>& mutable_nodes() { return nodes_; }
  const AstNode& node(std::size_t index) const { return nodes_.at(index); }
  const AstNode* find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // throws if unknown

  // Edge from `index` to its parent; unit-node children count as
  // subqueries and union-node children as union branches.
  EdgeType edge_type(std::size_t index) const;
  // Nearest ancestor-or-self that starts a query block (root, subquery
  // target or unit-node child).
  std::size_t block_root(std::size_t index) const;
  bool is_ancestor(std::size_t ancestor, std::size_t descendant) const;
  // Nodes in depth-first document order.
  std::vector<std::size_t> preorder() const;

  std::size_t add_node(AstNode node);

 private:
  std::vector<AstNode> nodes_;
};

// Stage one. Throws ResolutionError/LoadError for structural problems that
// validation should have rejected.
Ast build_initial_ast(const QueryDocument& q, const Schema& schema);

// Stable indented text form used by `explain --stage ast`.
std::string dump_ast(const Ast& ast);

std::string_view to_string(EdgeType t);

}  // namespace vqc

#endif  // VQC_AST_H_
