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

#include "vqc/symbol_table.h"

#include <algorithm>
#include <set>

#include "json_util.h"
#include "vqc/params.h"

namespace vqc {

void SymbolTable::add_node(const std::string& node_id) { table_[node_id]; }

void SymbolTable::add(const std::string& node_id, const std::string& name,
                      NameDescription description) {
  table_[node_id][name].push_back(std::move(description));
}

const NameMap& SymbolTable::visible_names(std::string_view node_id) const {
  auto it = table_.find(node_id);
  if (it == table_.end()) {
    throw ResolutionError("symbol table has no node '" +
                          std::string(node_id) + "'");
  }
  return it->second;
}

void SymbolTable::update_definition(std::string_view definition,
                                    NameKind kind,
                                    const std::optional<EntityRef>& type) {
  for (auto& [node, names] : table_) {
    for (auto& [name, descs] : names) {
      for (NameDescription& d : descs) {
        if (d.definition == definition) {
          d.kind = kind;
          d.type = type;
        }
      }
    }
  }
}

void SymbolTable::remove_if(
    const std::function<bool(const std::string&, const std::string&,
                             const NameDescription&)>& pred) {
  for (auto& [node, names] : table_) {
    for (auto it = names.begin(); it != names.end();) {
      auto& descs = it->second;
      descs.erase(std::remove_if(descs.begin(), descs.end(),
                                 [&](const NameDescription& d) {
                                   return pred(node, it->first, d);
                                 }),
                  descs.end());
      it = descs.empty() ? names.erase(it) : std::next(it);
    }
  }
}

bool SymbolTable::defines_anywhere(std::string_view name) const {
  for (const auto& [node, names] : table_) {
    if (names.count(std::string(name))) return true;
  }
  return false;
}

namespace {

// A subquery edge through which selected names can travel upward.
bool exports_upward(const Ast& ast, std::size_t index) {
  const AstNode& n = ast.node(index);
  if (!n.link) return false;
  return n.link->mode != LinkMode::kNegated && !n.link->existence_check;
}

}  // namespace

std::optional<ScopeFlags> scope_path(const Ast& ast, std::size_t def_node,
                                     std::size_t use_node,
                                     NameCategory category, bool selectable) {
  // Up edges from the definition to the common ancestor, then down edges.
  std::vector<std::size_t> up_nodes;
  std::size_t lca = def_node;
  while (lca != use_node && !ast.is_ancestor(lca, use_node)) {
    up_nodes.push_back(lca);
    lca = *ast.node(lca).parent;
  }
  std::vector<std::size_t> down_nodes;
  for (std::size_t y = use_node; y != lca; y = *ast.node(y).parent) {
    down_nodes.push_back(y);
  }
  std::reverse(down_nodes.begin(), down_nodes.end());

  ScopeFlags f;
  f.distance = static_cast<int>(up_nodes.size() + down_nodes.size());

  if (category == NameCategory::kAggregate) {
    if (up_nodes.empty()) return std::nullopt;
  }
  bool crossed_subquery = false;
  for (std::size_t k = 0; k < up_nodes.size(); ++k) {
    EdgeType e = ast.edge_type(up_nodes[k]);
    switch (category) {
      case NameCategory::kInstance:
        if (e == EdgeType::kNegated || e == EdgeType::kSubquery) {
          return std::nullopt;
        }
        break;
      case NameCategory::kAlias:
        if (e == EdgeType::kNegated) return std::nullopt;
        if (e == EdgeType::kSubquery) {
          if (crossed_subquery || !selectable ||
              !exports_upward(ast, up_nodes[k])) {
            return std::nullopt;
          }
          crossed_subquery = true;
        } else if (crossed_subquery && e != EdgeType::kRequired) {
          return std::nullopt;
        }
        break;
      case NameCategory::kAggregate:
        if (k == 0) {
          if (e != EdgeType::kSubquery || !exports_upward(ast, up_nodes[k])) {
            return std::nullopt;
          }
          crossed_subquery = true;
        } else if (e != EdgeType::kRequired) {
          return std::nullopt;
        }
        break;
    }
    if (e == EdgeType::kSubquery) ++f.up_by_subquery;
    if (e == EdgeType::kOptional || e == EdgeType::kUnion) {
      f.up_by_optional = true;
    }
  }
  for (std::size_t y : down_nodes) {
    EdgeType e = ast.edge_type(y);
    if (category != NameCategory::kInstance && e != EdgeType::kRequired) {
      return std::nullopt;
    }
    if (e == EdgeType::kSubquery) f.down_by_subquery = true;
  }
  return f;
}

namespace {

struct Definition {
  std::string name;
  NameKind kind;
  std::optional<EntityRef> type;
  std::size_t node;
  std::string element;
  NameCategory category;
  bool selectable;
};

bool is_simple_name(std::string_view text) {
  return is_plain_local_name(text) && !text.empty() &&
         text.find(':') == std::string_view::npos;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Definition> collect_definitions(const Ast& ast) {
  std::vector<Definition> defs;
  for (std::size_t i : ast.preorder()) {
    const AstNode& n = ast.node(i);
    if (n.info.instance_alias) {
      defs.push_back({*n.info.instance_alias, NameKind::kClassAlias,
                      n.info.class_entity, i, n.info.id,
                      NameCategory::kInstance, true});
    }
    if (n.info.class_variable) {
      defs.push_back({*n.info.class_variable, NameKind::kClassName,
                      std::nullopt, i, n.info.id + "#class",
                      NameCategory::kAlias, !n.info.class_variable_hidden});
    }
    if (n.link && n.link->path_variable) {
      defs.push_back({*n.link->path_variable, NameKind::kPropertyName,
                      std::nullopt, i, n.link->id, NameCategory::kAlias,
                      !n.link->path_variable_hidden});
    }
    for (const AstReferenceLink& r : n.reference_links) {
      if (r.path_variable) {
        defs.push_back({*r.path_variable, NameKind::kPropertyName,
                        std::nullopt, i, r.id, NameCategory::kAlias,
                        !r.path_variable_hidden});
      }
    }
    for (const AstField& f : n.fields) {
      if (f.alias) {
        defs.push_back({*f.alias, NameKind::kUnresolvedFieldAlias,
                        std::nullopt, i, f.id, NameCategory::kAlias,
                        !f.helper});
      } else if (std::string t = trim(f.expr); is_simple_name(t)) {
        defs.push_back({t, NameKind::kUnresolvedName, std::nullopt, i, f.id,
                        NameCategory::kAlias, !f.helper});
      }
    }
    for (const AstAggregation& a : n.aggregations) {
      if (a.alias) {
        defs.push_back({*a.alias, NameKind::kAggregateAlias, std::nullopt, i,
                        a.id, NameCategory::kAggregate, true});
      }
    }
  }
  return defs;
}

}  // namespace

SymbolTable build_initial_symbol_table(const Ast& ast) {
  SymbolTable st;
  for (const AstNode& n : ast.nodes()) st.add_node(n.info.id);
  for (const Definition& d : collect_definitions(ast)) {
    for (std::size_t u : ast.preorder()) {
      auto flags = scope_path(ast, d.node, u, d.category, d.selectable);
      if (!flags) continue;
      NameDescription desc;
      desc.kind = d.kind;
      desc.type = d.type;
      desc.context = ast.node(d.node).info.id;
      desc.definition = d.element;
      desc.up_by_subquery = flags->up_by_subquery;
      desc.down_by_subquery = flags->down_by_subquery;
      desc.up_by_optional = flags->up_by_optional;
      desc.distance_from_class = flags->distance;
      st.add(ast.node(u).info.id, d.name, std::move(desc));
    }
  }
  return st;
}

namespace {

struct Usage {
  ExprPosition position = ExprPosition::kCondition;
  std::string element;
  std::optional<std::size_t> field_index;  // set for field expressions
  bool implicit_definition = false;  // unaliased single-name field
};

struct FieldLocation {
  std::size_t node;
  std::size_t field;
};

class Resolver {
 public:
  Resolver(Ast& ast, SymbolTable& st, const Schema& schema,
           const Params& params, Diagnostics& diags)
      : ast_(ast), st_(st), schema_(schema), params_(params), diags_(diags) {
    for (const AstNode& n : ast_.nodes()) {
      if (n.info.instance_alias) defined_.insert(*n.info.instance_alias);
      for (const AstAggregation& a : n.aggregations) {
        if (a.alias) defined_.insert(*a.alias);
      }
      for (std::size_t k = 0; k < n.fields.size(); ++k) {
        if (n.fields[k].alias) defined_.insert(*n.fields[k].alias);
        fields_[n.fields[k].id] = {n.index, k};
        if (!n.fields[k].alias && is_simple_name(trim(n.fields[k].expr))) {
          implicit_.insert(n.fields[k].id);
        }
      }
    }
  }

  void run() {
    parse_all();
    for (const auto& [id, loc] : fields_) enrich(id);
    for (std::size_t i : ast_.preorder()) resolve_node(i);
  }

 private:
  // ---- Parsing.
  std::optional<Expr> parse(const std::string& text, ExprPosition position,
                            const std::string& element) {
    try {
      Expr e = parse_expression(text, position);
      Diagnostics local;
      Expr d = desugar(e, params_, position, &local);
      for (Diagnostic diag : local) {
        diag.element = element;
        diags_.add(std::move(diag));
      }
      return d;
    } catch (const ExprParseError& e) {
      diags_.error("syntax",
                   "cannot parse '" + text + "' at offset " +
                       std::to_string(e.offset()) + ": " + e.what(),
                   element);
      return std::nullopt;
    }
  }

  static void fold_inverse(Expr& path) {
    for (PathSequence& seq : path.name->alternatives) {
      std::reverse(seq.begin(), seq.end());
      for (PathStep& s : seq) s.inverse = !s.inverse;
    }
  }

  std::optional<Expr> parse_path(const std::string& text, bool inverse,
                                 const std::string& element) {
    if (text.empty() || text == "==" || text == "++" || text.starts_with("?")) {
      return std::nullopt;
    }
    auto e = parse(text, ExprPosition::kLinkPath, element);
    if (!e) return std::nullopt;
    if (e->kind != ExprKind::kName || e->name->reference_mark ||
        e->name->constant_mark || !e->name->lang_tags.empty() ||
        e->name->substring) {
      diags_.error("link", "link path must be a property path", element);
      return std::nullopt;
    }
    if (inverse) fold_inverse(*e);
    return e;
  }

  void parse_all() {
    for (AstNode& n : ast_.mutable_nodes()) {
      if (n.link) {
        n.link->parsed_path =
            parse_path(n.link->local_name, n.link->inverse, n.link->id);
      }
      for (AstReferenceLink& r : n.reference_links) {
        r.parsed_path = parse_path(r.path, r.inverse, r.id);
      }
      for (AstField& f : n.fields) {
        f.parsed_exp = parse(f.expr, ExprPosition::kField, f.id);
      }
      for (AstAggregation& a : n.aggregations) {
        a.parsed_exp = parse(a.expr, ExprPosition::kAggregation, a.id);
        if (a.parsed_exp && a.parsed_exp->kind != ExprKind::kAggregate) {
          diags_.error("aggregation",
                       "'" + a.expr + "' is not an aggregate function", a.id);
        }
      }
      for (AstCondition& c : n.conditions) {
        c.parsed_exp = parse(c.expr, ExprPosition::kCondition, c.id);
      }
      for (AstGrouping& g : n.groupings) {
        g.parsed_exp = parse(g.expr, ExprPosition::kGroupBy, g.id);
      }
      for (AstOrdering& o : n.orderings) {
        o.parsed_exp = parse(o.expr, ExprPosition::kOrderBy, o.id);
      }
    }
  }

  // ---- Lookup with usage refinements.
  std::vector<NameDescription> lookup(const std::string& name,
                                      std::size_t use_node,
                                      const Usage& usage) {
    std::vector<NameDescription> out;
    const NameMap& names = st_.visible_names(ast_.node(use_node).info.id);
    if (auto it = names.find(name); it != names.end()) {
      for (const NameDescription& d : it->second) {
        if (d.definition == usage.element) continue;
        if (usage.implicit_definition && implicit_.count(d.definition)) {
          continue;
        }
        if (usage.position == ExprPosition::kField &&
            d.kind != NameKind::kClassAlias &&
            d.kind != NameKind::kAggregateAlias) {
          std::size_t def_node = ast_.index_of(d.context);
          if (def_node == use_node) {
            // Same node: only fields introduced earlier.
            auto loc = fields_.find(d.definition);
            if (loc != fields_.end() && usage.field_index &&
                loc->second.field >= *usage.field_index) {
              continue;
            }
          } else if (!ast_.is_ancestor(use_node, def_node)) {
            continue;
          }
        }
        out.push_back(d);
      }
    }
    if (out.empty() && usage.position == ExprPosition::kOrderBy) {
      // Ordering by an aggregate defined at the same node.
      const AstNode& n = ast_.node(use_node);
      for (const AstAggregation& a : n.aggregations) {
        if (a.alias == name) {
          NameDescription d;
          d.kind = NameKind::kAggregateAlias;
          d.context = n.info.id;
          d.definition = a.id;
          out.push_back(d);
        }
      }
    }
    if (out.size() > 1) {
      int best = out.front().distance_from_class;
      for (const NameDescription& d : out) {
        best = std::min(best, d.distance_from_class);
      }
      std::erase_if(out, [&](const NameDescription& d) {
        return d.distance_from_class != best;
      });
    }
    return out;
  }

  void resolve_step(PathStep& step, const std::string& element) {
    if (step.text == "a") {
      step.term = "a";
      return;
    }
    try {
      ResolvedEntity r = schema_.resolve_entity(step.text, KindHint::kProperty);
      step.term = r.term;
      if (r.found) step.entity = r.entity;
    } catch (const ResolutionError& e) {
      diags_.error("name", e.what(), element);
      step.term = step.text;
    }
  }

  void resolve_entity(NameEntity& ne, std::size_t use_node,
                      const Usage& usage) {
    NameResolution r;
    r.context = ast_.node(use_node).info.id;
    PathStep& first = ne.alternatives.front().front();

    if (ne.constant_mark) {
      r.constant = true;
      try {
        ResolvedEntity e = schema_.resolve_entity(first.text, KindHint::kAny);
        first.term = e.term;
        if (e.found) {
          first.entity = e.entity;
          r.type = e.entity;
          r.kind = e.entity->is_property() ? NameKind::kPropertyName
                                           : NameKind::kClassName;
        }
      } catch (const ResolutionError& e) {
        diags_.error("name", e.what(), usage.element);
        first.term = first.text;
      }
      ne.resolution = std::move(r);
      return;
    }

    bool alias_candidate = ne.alternatives.size() == 1 && !first.inverse &&
                           first.modifier == 0 && is_simple_name(first.text);
    if (alias_candidate) {
      auto descs = lookup(first.text, use_node, usage);
      if (!descs.empty()) {
        for (const NameDescription& d : descs) enrich(d.definition);
        descs = lookup(first.text, use_node, usage);
      }
      if (!descs.empty()) {
        const NameDescription& d = descs.front();
        r.alias_start = true;
        r.kind = d.kind;
        r.type = d.type;
        r.context = d.context;
        for (const NameDescription& x : descs) {
          r.definitions.push_back(x.definition);
          r.value_only = r.value_only || x.up_by_optional;
        }
        if (d.kind == NameKind::kClassAlias && d.down_by_subquery &&
            usage.position == ExprPosition::kAggregation) {
          diags_.error("scoping",
                       "instance '" + first.text +
                           "' from an enclosing query cannot be aggregated",
                       usage.element);
        }
        PathSequence& seq = ne.alternatives.front();
        if (seq.size() > 1) {
          if (r.value_only) {
            diags_.error("scoping",
                         "'" + first.text +
                             "' comes from an optional part and cannot start "
                             "a navigation",
                         usage.element);
          }
          for (std::size_t k = 1; k < seq.size(); ++k) {
            resolve_step(seq[k], usage.element);
          }
          r.kind = NameKind::kPropertyName;
          r.type = seq.back().entity;
        }
        ne.resolution = std::move(r);
        return;
      }
    }
    if (ne.reference_mark) {
      diags_.error("scoping",
                   "'@" + first.text + "' is not visible at node " +
                       ast_.node(use_node).info.id,
                   usage.element);
      for (PathSequence& seq : ne.alternatives) {
        for (PathStep& s : seq) resolve_step(s, usage.element);
      }
      ne.resolution = std::move(r);
      return;
    }

    bool all_found = true;
    for (PathSequence& seq : ne.alternatives) {
      for (PathStep& s : seq) {
        resolve_step(s, usage.element);
        if (!s.entity && s.text != "a") all_found = false;
      }
    }
    if (all_found) {
      r.kind = NameKind::kPropertyName;
      if (ne.alternatives.size() == 1) r.type = ne.path().back().entity;
    } else if (alias_candidate && ne.path().size() == 1 &&
               (defined_.count(first.text) ||
                st_.defines_anywhere(first.text))) {
      diags_.error("scoping",
                   "name '" + first.text + "' is not visible at node " +
                       ast_.node(use_node).info.id,
                   usage.element);
    } else {
      diags_.warning("unresolved",
                     "name '" + ne.path_text() + "' is not in the schema",
                     usage.element);
    }
    ne.resolution = std::move(r);
  }

  void resolve_expr(Expr& e, std::size_t node, const Usage& usage) {
    for (NameEntity* ne : collect_name_entities(e)) {
      resolve_entity(*ne, node, usage);
    }
  }

  void resolve_path(std::optional<Expr>& path, const std::string& element) {
    if (!path) return;
    NameResolution r;
    bool all_found = true;
    for (PathSequence& seq : path->name->alternatives) {
      for (PathStep& s : seq) {
        resolve_step(s, element);
        if (!s.entity && s.text != "a") all_found = false;
      }
    }
    if (all_found) {
      r.kind = NameKind::kPropertyName;
      r.type = path->name->path().back().entity;
    } else {
      diags_.warning("unresolved",
                     "link path '" + path->name->path_text() +
                         "' is not in the schema",
                     element);
    }
    path->name->resolution = std::move(r);
  }

  // ---- Field definitions.
  void enrich(const std::string& field_id) {
    auto loc = fields_.find(field_id);
    if (loc == fields_.end() || enriched_.count(field_id)) return;
    if (in_progress_.count(field_id)) {
      diags_.error("cycle", "alias definitions refer to each other",
                   field_id);
      return;
    }
    in_progress_.insert(field_id);
    AstNode& node = ast_.mutable_nodes()[loc->second.node];
    AstField& f = node.fields[loc->second.field];
    NameKind kind = f.alias ? NameKind::kPropertyAlias : NameKind::kPropertyName;
    std::optional<EntityRef> type;
    std::vector<std::string> referents;
    if (f.parsed_exp) {
      Usage usage{ExprPosition::kField, f.id, loc->second.field,
                  implicit_.count(f.id) > 0};
      resolve_expr(*f.parsed_exp, node.index, usage);
      const Expr& e = *f.parsed_exp;
      if (e.kind == ExprKind::kName && e.name->alternatives.size() == 1) {
        const NameResolution& res = *e.name->resolution;
        if (res.alias_start && e.name->path().size() == 1) {
          kind = NameKind::kReferenceToAlias;
          referents = res.definitions;
        }
        type = res.type;
      } else {
        kind = NameKind::kBindAlias;
      }
    }
    st_.update_definition(f.id, kind, type);
    if (kind == NameKind::kReferenceToAlias) {
      // Where the referenced name is visible under the same name, the
      // reference adds nothing.
      std::string self = f.id;
      st_.remove_if([&](const std::string& node_id, const std::string& name,
                        const NameDescription& d) {
        if (d.definition != self) return false;
        const NameMap& names = st_.visible_names(node_id);
        const auto& same = names.at(name);
        return std::any_of(same.begin(), same.end(),
                           [&](const NameDescription& o) {
                             return std::find(referents.begin(),
                                              referents.end(),
                                              o.definition) != referents.end();
                           });
      });
    }
    in_progress_.erase(field_id);
    enriched_.insert(field_id);
  }

  void resolve_node(std::size_t i) {
    AstNode& n = ast_.mutable_nodes()[i];
    if (n.link) resolve_path(n.link->parsed_path, n.link->id);
    for (AstReferenceLink& r : n.reference_links) {
      resolve_path(r.parsed_path, r.id);
    }
    for (AstAggregation& a : n.aggregations) {
      if (a.parsed_exp) {
        resolve_expr(*a.parsed_exp, i, {ExprPosition::kAggregation, a.id, std::nullopt, false});
      }
    }
    for (AstCondition& c : n.conditions) {
      if (c.parsed_exp) {
        resolve_expr(*c.parsed_exp, i, {ExprPosition::kCondition, c.id, std::nullopt, false});
      }
    }
    for (AstGrouping& g : n.groupings) {
      if (g.parsed_exp) {
        resolve_expr(*g.parsed_exp, i, {ExprPosition::kGroupBy, g.id, std::nullopt, false});
      }
    }
    for (AstOrdering& o : n.orderings) {
      if (o.parsed_exp) {
        resolve_expr(*o.parsed_exp, i, {ExprPosition::kOrderBy, o.id, std::nullopt, false});
      }
    }
  }

  Ast& ast_;
  SymbolTable& st_;
  const Schema& schema_;
  const Params& params_;
  Diagnostics& diags_;
  std::map<std::string, FieldLocation> fields_;
  std::set<std::string> implicit_;
  // Every explicit name of the document, visible or not.
  std::set<std::string> defined_;
  std::set<std::string> enriched_;
  std::set<std::string> in_progress_;
};

}  // namespace

CompletedAst complete_ast(const Ast& ast, const Schema& schema,
                          const Params& params, Diagnostics& diags) {
  CompletedAst out{ast, build_initial_symbol_table(ast)};
  Resolver(out.ast, out.symbols, schema, params, diags).run();
  return out;
}

namespace {

internal::Json type_json(const EntityRef& e) {
  internal::Json t;
  t["iri"] = e.iri;
  t["prefix"] = e.prefix;
  t["local_name"] = e.local_name;
  t["display_name"] = e.display_name;
  t["is_local"] = e.is_local;
  if (e.property) {
    const PropertyInfo& p = *e.property;
    t["max_cardinality"] = p.max_cardinality;
    t["inverse_max_cardinality"] = p.inverse_max_cardinality;
    if (p.data_type) t["data_type"] = *p.data_type;
    t["property_type"] = p.property_type == PropertyType::kDataProperty
                             ? "DATA_PROPERTY"
                             : "OBJECT_PROPERTY";
    t["object_cnt"] = p.object_cnt;
    t["data_cnt"] = p.data_cnt;
  }
  return t;
}

}  // namespace

std::string dump_symbol_table(const SymbolTable& st) {
  internal::Json root = internal::Json::object();
  for (const auto& [node, names] : st.entries()) {
    internal::Json n = internal::Json::object();
    for (const auto& [name, descs] : names) {
      internal::Json list = internal::Json::array();
      for (const NameDescription& d : descs) {
        internal::Json j;
        j["kind"] = to_string(d.kind);
        j["type"] = d.type ? type_json(*d.type) : internal::Json();
        j["context"] = d.context;
        if (d.up_by_subquery > 0) j["upBySubQuery"] = d.up_by_subquery;
        if (d.down_by_subquery) j["downBySubquery"] = true;
        if (d.up_by_optional) j["upByOptional"] = true;
        if (d.distance_from_class > 0) {
          j["distanceFromClass"] = d.distance_from_class;
        }
        list.push_back(std::move(j));
      }
      n[name] = std::move(list);
    }
    root[node] = std::move(n);
  }
  return root.dump(2) + "\n";
}

}  // namespace vqc
