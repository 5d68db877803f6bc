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

#include "vqc/query_document.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "json_util.h"
#include "vqc/expr.h"
#include "vqc/schema.h"

namespace vqc {

using internal::Json;

namespace {

template <typename E, std::size_t N>
E parse_enum(const Json& j, std::string_view key, std::string_view where,
             const std::pair<E, std::string_view> (&table)[N], E fallback) {
  auto value = internal::opt_string(j, key, where);
  if (!value) return fallback;
  for (const auto& [e, name] : table) {
    if (name == *value) return e;
  }
  throw FormatError(std::string(where) + ": unknown " + std::string(key) +
                    " value '" + *value + "'");
}

template <typename E, std::size_t N>
std::string_view enum_name(E e,
                           const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto& [v, name] : table) {
    if (v == e) return name;
  }
  return "?";
}

constexpr std::pair<NodeType, std::string_view> kNodeTypes[] = {
    {NodeType::kData, "data"},
    {NodeType::kUnit, "unit"},
    {NodeType::kUnion, "union"}};
constexpr std::pair<LabelService, std::string_view> kLabelServices[] = {
    {LabelService::kNone, "none"},
    {LabelService::kLabel, "label"},
    {LabelService::kAltLabel, "altLabel"},
    {LabelService::kDescription, "description"}};
constexpr std::pair<ConditionForm, std::string_view> kForms[] = {
    {ConditionForm::kAuto, "auto"},
    {ConditionForm::kPlainFilter, "plain_filter"},
    {ConditionForm::kFilterExists, "filter_exists"}};
constexpr std::pair<LinkMode, std::string_view> kModes[] = {
    {LinkMode::kRequired, "required"},
    {LinkMode::kOptional, "optional"},
    {LinkMode::kNegated, "negated"}};
constexpr std::pair<LinkKind, std::string_view> kKinds[] = {
    {LinkKind::kJoin, "join"},
    {LinkKind::kSubquery, "subquery"},
    {LinkKind::kReference, "reference"}};

int opt_order(const Json& j, std::string_view where) {
  auto v = internal::opt_int(j, "order", where);
  return v ? static_cast<int>(*v) : 0;
}

std::optional<long long> opt_non_negative(const Json& j, std::string_view key,
                                          std::string_view where) {
  auto v = internal::opt_int(j, key, where);
  if (v && *v < 0) {
    throw FormatError(std::string(where) + ": '" + std::string(key) +
                      "' must be non-negative");
  }
  return v;
}

template <typename T>
void sort_by_order(std::vector<T>& items) {
  std::stable_sort(items.begin(), items.end(),
                   [](const T& a, const T& b) { return a.order < b.order; });
}

NodeRecord parse_node(const Json& j, std::size_t index) {
  std::string where = "node #" + std::to_string(index);
  internal::check_keys(
      j,
      {"id", "main", "nodeType", "className", "classVariable",
       "instanceAlias", "instanceResource", "indirectMembership", "distinct",
       "fields", "aggregations", "conditions", "groupBy", "orderBy", "limit",
       "offset", "fullSparql", "fullSparqlIsSubquery"},
      where);
  NodeRecord n;
  n.id = internal::req_string(j, "id", where);
  where = "node " + n.id;
  n.main = internal::opt_bool(j, "main", where);
  n.node_type =
      parse_enum(j, "nodeType", where, kNodeTypes, NodeType::kData);
  n.class_name = internal::opt_string(j, "className", where);
  n.class_variable = internal::opt_string(j, "classVariable", where);
  n.instance_alias = internal::opt_string(j, "instanceAlias", where);
  n.instance_resource = internal::opt_string(j, "instanceResource", where);
  n.indirect_membership = internal::opt_bool(j, "indirectMembership", where);
  n.distinct = internal::opt_bool(j, "distinct", where);

  std::size_t i = 0;
  for (const Json& f : internal::opt_array(j, "fields", where)) {
    std::string fw = where + " field #" + std::to_string(i);
    internal::check_keys(f,
                         {"id", "expr", "alias", "requireValues", "helper",
                          "labelService", "order"},
                         fw);
    FieldRecord r;
    r.id = internal::opt_string(f, "id", fw)
               .value_or(n.id + "/field/" + std::to_string(i));
    r.expr = internal::req_string(f, "expr", fw);
    r.alias = internal::opt_string(f, "alias", fw);
    r.require_values = internal::opt_bool(f, "requireValues", fw);
    r.helper = internal::opt_bool(f, "helper", fw);
    r.label_service = parse_enum(f, "labelService", fw, kLabelServices,
                                 LabelService::kNone);
    r.order = opt_order(f, fw);
    n.fields.push_back(std::move(r));
    ++i;
  }
  i = 0;
  for (const Json& a : internal::opt_array(j, "aggregations", where)) {
    std::string aw = where + " aggregation #" + std::to_string(i);
    internal::check_keys(a, {"id", "expr", "alias", "order"}, aw);
    AggregationRecord r;
    r.id = internal::opt_string(a, "id", aw)
               .value_or(n.id + "/aggregation/" + std::to_string(i));
    r.expr = internal::req_string(a, "expr", aw);
    r.alias = internal::opt_string(a, "alias", aw);
    r.order = opt_order(a, aw);
    n.aggregations.push_back(std::move(r));
    ++i;
  }
  i = 0;
  for (const Json& c : internal::opt_array(j, "conditions", where)) {
    std::string cw = where + " condition #" + std::to_string(i);
    internal::check_keys(c, {"id", "expr", "form", "order"}, cw);
    ConditionRecord r;
    r.id = internal::opt_string(c, "id", cw)
               .value_or(n.id + "/condition/" + std::to_string(i));
    r.expr = internal::req_string(c, "expr", cw);
    r.form = parse_enum(c, "form", cw, kForms, ConditionForm::kAuto);
    r.order = opt_order(c, cw);
    n.conditions.push_back(std::move(r));
    ++i;
  }
  for (const Json& g : internal::opt_array(j, "groupBy", where)) {
    if (!g.is_string()) {
      throw FormatError(where + ": groupBy entries must be strings");
    }
    n.group_by.push_back(g.get<std::string>());
  }
  i = 0;
  for (const Json& o : internal::opt_array(j, "orderBy", where)) {
    std::string ow = where + " orderBy #" + std::to_string(i);
    internal::check_keys(o, {"id", "expr", "descending"}, ow);
    OrderRecord r;
    r.id = internal::opt_string(o, "id", ow)
               .value_or(n.id + "/order/" + std::to_string(i));
    r.expr = internal::req_string(o, "expr", ow);
    r.descending = internal::opt_bool(o, "descending", ow);
    n.order_by.push_back(std::move(r));
    ++i;
  }
  n.limit = opt_non_negative(j, "limit", where);
  n.offset = opt_non_negative(j, "offset", where);
  n.full_sparql = internal::opt_string(j, "fullSparql", where);
  n.full_sparql_is_subquery =
      internal::opt_bool(j, "fullSparqlIsSubquery", where);

  sort_by_order(n.fields);
  sort_by_order(n.aggregations);
  sort_by_order(n.conditions);
  return n;
}

LinkRecord parse_link(const Json& j, std::size_t index) {
  std::string where = "link #" + std::to_string(index);
  internal::check_keys(j,
                       {"id", "source", "target", "path", "inverse", "mode",
                        "kind", "existenceCheck", "global", "order"},
                       where);
  LinkRecord l;
  l.id = internal::opt_string(j, "id", where)
             .value_or("link/" + std::to_string(index));
  l.source = internal::req_string(j, "source", where);
  l.target = internal::req_string(j, "target", where);
  l.path = internal::opt_string(j, "path", where).value_or("");
  l.inverse = internal::opt_bool(j, "inverse", where);
  l.mode = parse_enum(j, "mode", where, kModes, LinkMode::kRequired);
  l.kind = parse_enum(j, "kind", where, kKinds, LinkKind::kJoin);
  l.existence_check = internal::opt_bool(j, "existenceCheck", where);
  l.global = internal::opt_bool(j, "global", where);
  l.order = opt_order(j, where);
  return l;
}

template <typename T>
void put_opt(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

const NodeRecord* QueryDocument::find_node(std::string_view id) const {
  for (const NodeRecord& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const NodeRecord* QueryDocument::main_node() const {
  for (const NodeRecord& n : nodes) {
    if (n.main) return &n;
  }
  return nullptr;
}

QueryDocument parse_query_document(std::string_view document) {
  Json j = internal::parse_json(document, "query document");
  internal::check_keys(j, {"formatVersion", "schemaName", "nodes", "links"},
                       "query document");
  auto version = internal::opt_int(j, "formatVersion", "query document");
  if (version && *version != kQueryFormatVersion) {
    throw FormatError("query document: unsupported formatVersion " +
                      std::to_string(*version));
  }
  QueryDocument q;
  q.schema_name =
      internal::opt_string(j, "schemaName", "query document").value_or("");
  std::size_t i = 0;
  for (const Json& n : internal::opt_array(j, "nodes", "query document")) {
    q.nodes.push_back(parse_node(n, i++));
  }
  i = 0;
  for (const Json& l : internal::opt_array(j, "links", "query document")) {
    q.links.push_back(parse_link(l, i++));
  }
  sort_by_order(q.links);

  std::set<std::string> ids;
  int mains = 0;
  for (const NodeRecord& n : q.nodes) {
    if (!ids.insert(n.id).second) {
      throw FormatError("query document: duplicate node id '" + n.id + "'");
    }
    if (n.main) ++mains;
  }
  if (mains != 1) {
    throw FormatError("query document: expected exactly one main node, found " +
                      std::to_string(mains));
  }
  std::set<std::string> link_ids;
  for (const LinkRecord& l : q.links) {
    if (!link_ids.insert(l.id).second) {
      throw FormatError("query document: duplicate link id '" + l.id + "'");
    }
    if (!ids.count(l.source) || !ids.count(l.target)) {
      throw FormatError("query document: link '" + l.id +
                        "' names an unknown node");
    }
  }
  return q;
}

QueryDocument load_query_document(const std::filesystem::path& path) {
  return parse_query_document(internal::read_file(path));
}

std::string serialize_query_document(const QueryDocument& q) {
  Json j;
  j["formatVersion"] = kQueryFormatVersion;
  j["schemaName"] = q.schema_name;
  j["nodes"] = Json::array();
  for (const NodeRecord& n : q.nodes) {
    Json o;
    o["id"] = n.id;
    o["main"] = n.main;
    o["nodeType"] = to_string(n.node_type);
    put_opt(o, "className", n.class_name);
    put_opt(o, "classVariable", n.class_variable);
    put_opt(o, "instanceAlias", n.instance_alias);
    put_opt(o, "instanceResource", n.instance_resource);
    o["indirectMembership"] = n.indirect_membership;
    o["distinct"] = n.distinct;
    o["fields"] = Json::array();
    for (const FieldRecord& f : n.fields) {
      Json r;
      r["id"] = f.id;
      r["expr"] = f.expr;
      put_opt(r, "alias", f.alias);
      r["requireValues"] = f.require_values;
      r["helper"] = f.helper;
      r["labelService"] = to_string(f.label_service);
      r["order"] = f.order;
      o["fields"].push_back(std::move(r));
    }
    o["aggregations"] = Json::array();
    for (const AggregationRecord& a : n.aggregations) {
      Json r;
      r["id"] = a.id;
      r["expr"] = a.expr;
      put_opt(r, "alias", a.alias);
      r["order"] = a.order;
      o["aggregations"].push_back(std::move(r));
    }
    o["conditions"] = Json::array();
    for (const ConditionRecord& c : n.conditions) {
      Json r;
      r["id"] = c.id;
      r["expr"] = c.expr;
      r["form"] = to_string(c.form);
      r["order"] = c.order;
      o["conditions"].push_back(std::move(r));
    }
    o["groupBy"] = n.group_by;
    o["orderBy"] = Json::array();
    for (const OrderRecord& r0 : n.order_by) {
      Json r;
      r["id"] = r0.id;
      r["expr"] = r0.expr;
      r["descending"] = r0.descending;
      o["orderBy"].push_back(std::move(r));
    }
    put_opt(o, "limit", n.limit);
    put_opt(o, "offset", n.offset);
    put_opt(o, "fullSparql", n.full_sparql);
    o["fullSparqlIsSubquery"] = n.full_sparql_is_subquery;
    j["nodes"].push_back(std::move(o));
  }
  j["links"] = Json::array();
  for (const LinkRecord& l : q.links) {
    Json o;
    o["id"] = l.id;
    o["source"] = l.source;
    o["target"] = l.target;
    o["path"] = l.path;
    o["inverse"] = l.inverse;
    o["mode"] = to_string(l.mode);
    o["kind"] = to_string(l.kind);
    o["existenceCheck"] = l.existence_check;
    o["global"] = l.global;
    o["order"] = l.order;
    j["links"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

namespace {

void check_expression(std::string_view text, ExprPosition position,
                      const std::string& element, Diagnostics& d) {
  try {
    parse_expression(text, position);
  } catch (const ExprParseError& e) {
    std::string msg = "cannot parse '" + std::string(text) + "' at offset " +
                      std::to_string(e.offset()) + ": " + e.what();
    d.error("syntax", msg, element);
  }
}

bool is_explicit_variable(std::string_view text) {
  return !text.empty() && text.front() == '?';
}

}  // namespace

Diagnostics validate_document(const QueryDocument& q, const Schema& schema) {
  Diagnostics d;
  const NodeRecord* main = q.main_node();
  if (main == nullptr) {
    d.error("structure", "no main node");
    return d;
  }

  // (a) Spanning tree over the structural links.
  std::map<std::string, const LinkRecord*> parent_link;
  std::map<std::string, std::vector<const LinkRecord*>> children;
  std::size_t structural = 0;
  bool tree_ok = true;
  for (const LinkRecord& l : q.links) {
    if (l.kind == LinkKind::kReference) continue;
    ++structural;
    if (l.target == main->id || parent_link.count(l.target) ||
        l.source == l.target) {
      tree_ok = false;
      continue;
    }
    parent_link[l.target] = &l;
    children[l.source].push_back(&l);
  }
  std::set<std::string> reached{main->id};
  std::vector<std::string> stack{main->id};
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    for (const LinkRecord* l : children[id]) {
      if (reached.insert(l->target).second) stack.push_back(l->target);
    }
  }
  if (!tree_ok || structural != q.nodes.size() - 1 ||
      reached.size() != q.nodes.size()) {
    d.error("structure", "structure is not a tree");
    return d;
  }

  // Block of a node: the nearest ancestor-or-self entered by a subquery
  // link (or a child of a unit node), else the main node.
  auto opens_block = [&](const LinkRecord& l) {
    if (l.kind == LinkKind::kSubquery) return true;
    const NodeRecord* src = q.find_node(l.source);
    return src != nullptr && src->node_type == NodeType::kUnit;
  };
  auto block_of = [&](const std::string& id) {
    std::string cur = id;
    while (cur != main->id) {
      const LinkRecord* l = parent_link.at(cur);
      if (opens_block(*l)) return cur;
      cur = l->source;
    }
    return cur;
  };
  auto block_ancestor = [&](const std::string& upper, std::string lower) {
    while (true) {
      if (lower == upper) return true;
      if (lower == main->id) return false;
      lower = block_of(parent_link.at(lower)->source);
    }
  };
  auto in_local_subquery = [&](const std::string& id) {
    std::string b = block_of(id);
    while (b != main->id) {
      const LinkRecord* l = parent_link.at(b);
      if (l->kind == LinkKind::kSubquery && !l->global) return true;
      b = block_of(l->source);
    }
    return false;
  };

  // (b) Reference links.
  for (const LinkRecord& l : q.links) {
    if (l.kind != LinkKind::kReference) {
      if (l.path == "==" || l.path == "++") {
        if (l.kind != LinkKind::kJoin) {
          d.error("link", "'" + l.path + "' is only allowed on join links",
                  l.id);
        }
      }
      if ((l.existence_check || l.global) && l.kind != LinkKind::kSubquery) {
        d.error("link",
                "existence checks and global mode need a subquery link",
                l.id);
      }
      if (l.existence_check && l.global) {
        d.error("link", "an existence check cannot be global", l.id);
      }
    } else {
      if (l.mode == LinkMode::kOptional) {
        d.error("link", "reference links cannot be optional", l.id);
      }
      if (l.existence_check || l.global) {
        d.error("link",
                "existence checks and global mode need a subquery link",
                l.id);
      }
      if (l.path == "==" || l.path == "++") {
        d.error("link", "'" + l.path + "' is only allowed on join links",
                l.id);
      }
      if (!block_ancestor(block_of(l.target), block_of(l.source))) {
        d.error("link",
                "reference links must point from a nested block to an "
                "enclosing one",
                l.id);
      }
    }
    if (l.path.empty()) {
      // Links into control nodes and global subqueries need no property.
      const NodeRecord* target = q.find_node(l.target);
      bool control = target != nullptr && target->node_type != NodeType::kData;
      if (!control && !l.global) {
        d.error("link", "link has no property path", l.id);
      }
    }
    if (!l.path.empty() && l.path != "==" && l.path != "++") {
      check_expression(l.path, ExprPosition::kLinkPath, l.id, d);
    }
  }

  for (const NodeRecord& n : q.nodes) {
    bool is_root_of_block = n.main || block_of(n.id) == n.id;
    const LinkRecord* pl = n.main ? nullptr : parent_link.at(n.id);
    bool global_root = pl != nullptr && pl->kind == LinkKind::kSubquery &&
                       pl->global;

    // (c) Local subqueries and limit placement.
    if ((n.limit || n.offset) && !n.main && !global_root) {
      d.error("subquery",
              "limit and offset are only allowed on the main node or a "
              "global subquery",
              n.id);
    }
    if (!n.order_by.empty() && in_local_subquery(n.id)) {
      d.error("subquery", "order by is not allowed inside a local subquery",
              n.id);
    }
    if (!n.aggregations.empty() && !is_root_of_block) {
      d.error("aggregation",
              "aggregations are only allowed on the main node or a "
              "subquery root",
              n.id);
    }

    // (e) Control nodes.
    if (n.node_type != NodeType::kData) {
      if (n.class_name || n.class_variable || n.instance_resource) {
        d.error("control", "control nodes carry no class or instance", n.id);
      }
      if (n.node_type == NodeType::kUnion) {
        for (const LinkRecord* c : children[n.id]) {
          if (c->mode == LinkMode::kNegated) {
            d.error("control", "union alternatives cannot be negated",
                    c->id);
          }
        }
      }
    }
    if (n.class_name && n.class_variable) {
      d.error("node", "class name and class variable are exclusive", n.id);
    }
    if (n.class_variable && !is_explicit_variable(*n.class_variable)) {
      d.error("node", "class variable must start with '?'", n.id);
    }

    // (d) Expression syntax.
    if (n.class_name) {
      std::size_t before = d.size();
      check_expression(*n.class_name, ExprPosition::kClassPosition, n.id, d);
      if (d.size() == before && !is_explicit_variable(*n.class_name)) {
        try {
          ResolvedEntity r = schema.resolve_entity(*n.class_name,
                                                   KindHint::kClass);
          if (!r.found) {
            d.warning("schema",
                      "class '" + *n.class_name + "' is not in the schema",
                      n.id);
          }
        } catch (const ResolutionError& e) {
          d.error("schema", e.what(), n.id);
        }
      }
    }
    for (const FieldRecord& f : n.fields) {
      check_expression(f.expr, ExprPosition::kField, f.id, d);
      if (f.helper && f.require_values &&
          f.label_service != LabelService::kNone) {
        d.warning("field",
                  "helper fields with required values ignore the label "
                  "service",
                  f.id);
      }
    }
    for (const AggregationRecord& a : n.aggregations) {
      check_expression(a.expr, ExprPosition::kAggregation, a.id, d);
    }
    for (const ConditionRecord& c : n.conditions) {
      check_expression(c.expr, ExprPosition::kCondition, c.id, d);
    }
    for (const std::string& g : n.group_by) {
      check_expression(g, ExprPosition::kGroupBy, n.id, d);
    }
    for (const OrderRecord& o : n.order_by) {
      check_expression(o.expr, ExprPosition::kOrderBy, o.id, d);
    }
  }
  return d;
}

std::string_view to_string(NodeType t) { return enum_name(t, kNodeTypes); }
std::string_view to_string(LinkMode m) { return enum_name(m, kModes); }
std::string_view to_string(LinkKind k) { return enum_name(k, kKinds); }
std::string_view to_string(LabelService s) {
  return enum_name(s, kLabelServices);
}
std::string_view to_string(ConditionForm f) { return enum_name(f, kForms); }

}  // namespace vqc
