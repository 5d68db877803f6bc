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

#include "vqc/ast.h"

#include <map>
#include <sstream>

namespace vqc {
namespace {

void split_variable(const std::string& text, std::optional<std::string>& name,
                    bool& hidden) {
  std::size_t n = text.starts_with("??") ? 2 : 1;
  hidden = n == 2;
  name = text.substr(n);
}

std::string escape_quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const AstNode* Ast::find(std::string_view id) const {
  for (const AstNode& n : nodes_) {
    if (n.info.id == id) return &n;
  }
  return nullptr;
}

std::size_t Ast::index_of(std::string_view id) const {
  const AstNode* n = find(id);
  if (n == nullptr) {
    throw ResolutionError("unknown node '" + std::string(id) + "'");
  }
  return n->index;
}

EdgeType Ast::edge_type(std::size_t index) const {
  const AstNode& n = nodes_.at(index);
  if (!n.parent) return EdgeType::kRequired;
  const AstNode& p = nodes_.at(*n.parent);
  if (p.info.node_type == NodeType::kUnit) return EdgeType::kSubquery;
  if (p.info.node_type == NodeType::kUnion) return EdgeType::kUnion;
  if (n.link->kind == LinkKind::kSubquery) return EdgeType::kSubquery;
  switch (n.link->mode) {
    case LinkMode::kRequired: return EdgeType::kRequired;
    case LinkMode::kOptional: return EdgeType::kOptional;
    case LinkMode::kNegated: return EdgeType::kNegated;
  }
  return EdgeType::kRequired;
}

std::size_t Ast::block_root(std::size_t index) const {
  while (nodes_.at(index).parent && edge_type(index) != EdgeType::kSubquery) {
    index = *nodes_.at(index).parent;
  }
  return index;
}

bool Ast::is_ancestor(std::size_t ancestor, std::size_t descendant) const {
  std::optional<std::size_t> cur = nodes_.at(descendant).parent;
  while (cur) {
    if (*cur == ancestor) return true;
    cur = nodes_.at(*cur).parent;
  }
  return false;
}

std::vector<std::size_t> Ast::preorder() const {
  std::vector<std::size_t> out;
  if (nodes_.empty()) return out;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    out.push_back(i);
    const auto& ch = nodes_[i].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::size_t Ast::add_node(AstNode node) {
  node.index = nodes_.size();
  nodes_.push_back(std::move(node));
  return nodes_.back().index;
}

Ast build_initial_ast(const QueryDocument& q, const Schema& schema) {
  const NodeRecord* main = q.main_node();
  if (main == nullptr) throw ResolutionError("document has no main node");

  std::map<std::string, std::vector<const LinkRecord*>> children;
  std::map<std::string, std::vector<const LinkRecord*>> references;
  for (const LinkRecord& l : q.links) {
    if (l.kind == LinkKind::kReference) {
      references[l.source].push_back(&l);
    } else {
      children[l.source].push_back(&l);
    }
  }

  Ast ast;
  auto make_node = [&](const NodeRecord& r) {
    AstNode n;
    NodeInfo& info = n.info;
    info.id = r.id;
    info.main = r.main;
    info.node_type = r.node_type;
    info.class_text = r.class_name;
    if (r.class_name) {
      ResolvedEntity e = schema.resolve_entity(*r.class_name, KindHint::kClass);
      info.iri = e.iri;
      info.class_term = e.term;
      if (e.found && e.entity) {
        info.class_entity = e.entity;
        info.local_name = e.entity->local_name;
        info.prefix = e.entity->prefix;
        info.is_local = e.entity->is_local;
      } else {
        info.local_name = *r.class_name;
      }
    }
    info.instance_alias = r.instance_alias;
    info.instance_resource = r.instance_resource;
    if (r.instance_resource) {
      info.instance_term =
          schema.resolve_entity(*r.instance_resource, KindHint::kAny).term;
    }
    if (r.class_variable) {
      split_variable(*r.class_variable, info.class_variable,
                     info.class_variable_hidden);
    }
    info.indirect_membership = r.indirect_membership;
    info.distinct = r.distinct;
    for (const FieldRecord& f : r.fields) {
      n.fields.push_back({f.id, f.expr, f.alias, f.require_values, f.helper,
                          f.label_service, f.order, std::nullopt});
    }
    for (const AggregationRecord& a : r.aggregations) {
      n.aggregations.push_back({a.id, a.expr, a.alias, a.order, std::nullopt});
    }
    for (const ConditionRecord& c : r.conditions) {
      n.conditions.push_back({c.id, c.expr, c.form, c.order, std::nullopt});
    }
    for (std::size_t i = 0; i < r.group_by.size(); ++i) {
      n.groupings.push_back(
          {r.id + "/group/" + std::to_string(i), r.group_by[i], std::nullopt});
    }
    for (const OrderRecord& o : r.order_by) {
      n.orderings.push_back({o.id, o.expr, o.descending, std::nullopt});
    }
    for (const LinkRecord* l : references[r.id]) {
      AstReferenceLink ref;
      ref.id = l->id;
      ref.source = l->source;
      ref.target = l->target;
      ref.path = l->path;
      ref.inverse = l->inverse;
      ref.mode = l->mode;
      if (l->path.starts_with("?")) {
        split_variable(l->path, ref.path_variable, ref.path_variable_hidden);
      }
      n.reference_links.push_back(std::move(ref));
    }
    n.limit = r.limit;
    n.offset = r.offset;
    n.full_sparql = r.full_sparql;
    n.full_sparql_is_subquery = r.full_sparql_is_subquery;
    return n;
  };

  struct Pending {
    const NodeRecord* record;
    const LinkRecord* link;
    std::optional<std::size_t> parent;
  };
  std::vector<Pending> stack{{main, nullptr, std::nullopt}};
  std::map<std::string, bool> seen;
  while (!stack.empty()) {
    Pending p = stack.back();
    stack.pop_back();
    if (seen[p.record->id]) {
      throw ResolutionError("structure is not a tree at node '" +
                            p.record->id + "'");
    }
    seen[p.record->id] = true;
    AstNode n = make_node(*p.record);
    n.parent = p.parent;
    if (p.link != nullptr) {
      LinkInfo li;
      li.id = p.link->id;
      li.local_name = p.link->path;
      li.mode = p.link->mode;
      li.kind = p.link->kind;
      li.inverse = p.link->inverse;
      li.is_free = p.link->path == "++";
      li.is_same_instance = p.link->path == "==";
      if (p.link->path.starts_with("?")) {
        split_variable(p.link->path, li.path_variable,
                       li.path_variable_hidden);
      }
      li.existence_check = p.link->existence_check;
      li.global = p.link->global;
      n.link = std::move(li);
    }
    std::size_t index = ast.add_node(std::move(n));
    if (p.parent) ast.mutable_nodes()[*p.parent].children.push_back(index);
    const auto& ch = children[p.record->id];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
      const NodeRecord* target = q.find_node((*it)->target);
      if (target == nullptr) {
        throw ResolutionError("link '" + (*it)->id + "' has no target");
      }
      stack.push_back({target, *it, index});
    }
  }
  if (ast.nodes().size() != q.nodes.size()) {
    throw ResolutionError("structure is not a tree");
  }
  return ast;
}

std::string_view to_string(EdgeType t) {
  switch (t) {
    case EdgeType::kRequired: return "required";
    case EdgeType::kOptional: return "optional";
    case EdgeType::kNegated: return "negated";
    case EdgeType::kUnion: return "union";
    case EdgeType::kSubquery: return "subquery";
  }
  return "?";
}

namespace {

void dump_expr(std::ostringstream& os, const std::optional<Expr>& e) {
  if (e) os << " => " << to_canonical(*e);
}

void dump_node(const Ast& ast, std::size_t index, int depth,
               std::ostringstream& os) {
  const AstNode& n = ast.node(index);
  std::string pad(depth * 2, ' ');
  if (n.link) {
    const LinkInfo& l = *n.link;
    os << pad << "link " << l.id << ' ' << to_string(l.kind) << ' '
       << to_string(l.mode) << " path=" << escape_quoted(l.local_name);
    if (l.inverse) os << " inverse";
    if (l.existence_check) os << " existence_check";
    if (l.global) os << " global";
    dump_expr(os, l.parsed_path);
    os << '\n';
    pad += "  ";
    ++depth;
  }
  const NodeInfo& info = n.info;
  os << pad << "node " << info.id << ' ' << to_string(info.node_type);
  if (info.main) os << " main";
  if (info.class_text) {
    os << " class=" << info.class_term;
    if (!info.is_local) os << " (not local)";
  }
  if (info.class_variable) {
    os << " classVariable=" << (info.class_variable_hidden ? "??" : "?")
       << *info.class_variable;
  }
  if (info.instance_alias) os << " alias=" << *info.instance_alias;
  if (info.instance_resource) os << " instance=" << info.instance_term;
  if (info.indirect_membership) os << " indirect";
  if (info.distinct) os << " distinct";
  if (n.limit) os << " limit=" << *n.limit;
  if (n.offset) os << " offset=" << *n.offset;
  os << '\n';
  std::string inner = pad + "  ";
  for (const AstField& f : n.fields) {
    os << inner << "field " << f.id << ' ' << escape_quoted(f.expr);
    if (f.alias) os << " alias=" << *f.alias;
    if (f.require_values) os << " {+}";
    if (f.helper) os << " {h}";
    if (f.label_service != LabelService::kNone) {
      os << " label=" << to_string(f.label_service);
    }
    dump_expr(os, f.parsed_exp);
    os << '\n';
  }
  for (const AstAggregation& a : n.aggregations) {
    os << inner << "aggregation " << a.id << ' ' << escape_quoted(a.expr);
    if (a.alias) os << " alias=" << *a.alias;
    dump_expr(os, a.parsed_exp);
    os << '\n';
  }
  for (const AstCondition& c : n.conditions) {
    os << inner << "condition " << c.id << ' ' << escape_quoted(c.expr);
    if (c.form != ConditionForm::kAuto) os << " form=" << to_string(c.form);
    dump_expr(os, c.parsed_exp);
    os << '\n';
  }
  for (const AstGrouping& g : n.groupings) {
    os << inner << "group " << g.id << ' ' << escape_quoted(g.expr);
    dump_expr(os, g.parsed_exp);
    os << '\n';
  }
  for (const AstOrdering& o : n.orderings) {
    os << inner << "order " << o.id << ' ' << escape_quoted(o.expr)
       << (o.descending ? " desc" : " asc");
    dump_expr(os, o.parsed_exp);
    os << '\n';
  }
  for (const AstReferenceLink& r : n.reference_links) {
    os << inner << "reference " << r.id << " -> " << r.target << ' '
       << to_string(r.mode) << " path=" << escape_quoted(r.path);
    if (r.inverse) os << " inverse";
    dump_expr(os, r.parsed_path);
    os << '\n';
  }
  if (n.full_sparql) {
    os << inner << "sparql" << (n.full_sparql_is_subquery ? " subquery" : "")
       << ' ' << escape_quoted(*n.full_sparql) << '\n';
  }
  for (std::size_t c : n.children) dump_node(ast, c, depth + 1, os);
}

}  // namespace

std::string dump_ast(const Ast& ast) {
  std::ostringstream os;
  if (!ast.nodes().empty()) dump_node(ast, 0, 0, os);
  return os.str();
}

}  // namespace vqc
