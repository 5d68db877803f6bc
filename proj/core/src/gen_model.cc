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

#include "vqc/gen_model.h"

#include <algorithm>
#include <set>
#include <sstream>

namespace vqc {
namespace {

bool is_xsd_string(const std::optional<EntityRef>& type) {
  if (!type || !type->property || !type->property->data_type) return false;
  const std::string& dt = *type->property->data_type;
  return dt == "xsd:string" || dt == "http://www.w3.org/2001/XMLSchema#string";
}

bool is_comparison(std::string_view op) {
  return op == "=" || op == "!=" || op == "<" || op == "<=" || op == ">" ||
         op == ">=";
}

bool is_plain_string(const Expr& e) {
  return e.kind == ExprKind::kLiteral &&
         e.literal_kind == LiteralKind::kString && e.lang.empty() &&
         e.datatype.empty();
}

bool is_string_expression(const Expr& e) {
  static const std::set<std::string, std::less<>> kStringFunctions = {
      "STR",    "CONCAT",    "LCASE",    "UCASE", "SUBSTR",
      "STRBEFORE", "STRAFTER", "REPLACE", "ENCODE_FOR_URI"};
  return is_plain_string(e) ||
         (e.kind == ExprKind::kCall && kStringFunctions.count(e.op) > 0);
}

bool is_string_property(const Expr& e) {
  return e.kind == ExprKind::kName && !e.name->constant_mark &&
         e.name->resolution && is_xsd_string(e.name->resolution->type);
}

std::string quote_string(std::string_view v) {
  std::string out = "\"";
  for (char c : v) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

int precedence(const Expr& e) {
  if (e.kind == ExprKind::kIn) return 3;
  if (e.kind == ExprKind::kUnary) return 6;
  if (e.kind != ExprKind::kBinary) return 7;
  const std::string& op = e.op;
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (is_comparison(op)) return 3;
  if (op == "+" || op == "-") return 4;
  return 5;
}

std::string path_text(const NameEntity& n, std::size_t first_step) {
  std::string out;
  for (std::size_t a = 0; a < n.alternatives.size(); ++a) {
    if (a > 0) out += "|";
    const PathSequence& seq = n.alternatives[a];
    for (std::size_t k = first_step; k < seq.size(); ++k) {
      if (k > first_step) out += "/";
      const PathStep& s = seq[k];
      if (s.inverse) out += "^";
      out += s.term.empty() ? s.text : s.term;
      if (s.modifier != 0) out += s.modifier;
    }
  }
  return out;
}

// Functions that always produce a value for bound arguments.
bool is_total(const Expr& e) {
  static const std::set<std::string, std::less<>> kTotal = {
      "STR",   "LANG",  "STRLEN", "UCASE",  "LCASE",     "CONCAT",
      "COALESCE", "BOUND", "ISIRI", "ISURI", "ISBLANK", "ISLITERAL",
      "ISNUMERIC", "IF",  "SAMETERM"};
  switch (e.kind) {
    case ExprKind::kBinary:
      if (e.op == "/") return false;
      break;
    case ExprKind::kCall:
      if (kTotal.count(e.op) == 0) return false;
      break;
    case ExprKind::kExists:
    case ExprKind::kLiteral:
    case ExprKind::kName:
    case ExprKind::kUnary:
    case ExprKind::kIn:
    case ExprKind::kClassExpr:
      break;
    default:
      return false;
  }
  return std::all_of(e.children.begin(), e.children.end(), is_total);
}

// One property navigation written as a triple pattern.
struct Navigation {
  std::string triple;
  bool multi_valued = false;
};

// Writes expressions as SPARQL, collecting the triples for the property
// navigations they contain.
class ExprWriter {
 public:
  ExprWriter(const Ast& ast, const VariableMap& vm, const Params& params,
             Diagnostics& diags)
      : ast_(ast), vm_(vm), params_(params), diags_(diags) {}

  std::string instance(std::size_t node) const {
    return vm_.term(ast_.node(node).info.id);
  }

  std::string write(const Expr& e, std::size_t node, const std::string& element,
                    std::vector<Navigation>& out) {
    node_ = node;
    element_ = element;
    return expr(e, out);
  }

  // Term standing for a name: the variable of a referenced definition,
  // a constant resource, or the value variable of a navigation.
  std::string name_term(const NameEntity& n, std::vector<Navigation>& out) {
    const PathStep& first = n.alternatives.front().front();
    if (n.constant_mark) return first.term.empty() ? first.text : first.term;
    const NameResolution* r = n.resolution ? &*n.resolution : nullptr;
    bool reference = r && r->alias_start && !r->definitions.empty();
    if (reference && n.is_single_step()) {
      return vm_.term(r->definitions.front());
    }
    std::string object = vm_.term(usage_key(element_, n));
    std::string subject = instance(node_);
    std::size_t skip = 0;
    if (reference) {
      subject = vm_.term(r->definitions.front());
      skip = 1;
    }
    Navigation nav;
    nav.triple = subject + " " + path_text(n, skip) + " " + object + ".";
    for (const PathSequence& seq : n.alternatives) {
      for (std::size_t k = skip; k < seq.size(); ++k) {
        const PathStep& s = seq[k];
        if (s.inverse || s.modifier == '*' || s.modifier == '+' ||
            (s.entity && !s.entity->single_valued())) {
          nav.multi_valued = true;
        }
      }
    }
    if (std::none_of(out.begin(), out.end(), [&](const Navigation& x) {
          return x.triple == nav.triple;
        })) {
      out.push_back(std::move(nav));
    }
    return object;
  }

 private:
  std::string child(const Expr& parent, const Expr& c, bool right,
                    std::vector<Navigation>& out) {
    std::string t = expr(c, out);
    int pp = precedence(parent);
    int cp = precedence(c);
    bool paren = right ? cp <= pp : (cp < pp || (cp == 3 && pp == 3));
    return paren && cp < 7 ? "(" + t + ")" : t;
  }

  std::string literal(const Expr& e) {
    if (e.literal_kind != LiteralKind::kString) return e.op;
    std::string out = quote_string(e.op);
    if (!e.lang.empty()) return out + "@" + e.lang;
    if (!e.datatype.empty()) return out + "^^" + e.datatype;
    return out;
  }

  std::string expr(const Expr& e, std::vector<Navigation>& out) {
    switch (e.kind) {
      case ExprKind::kLiteral:
        return literal(e);
      case ExprKind::kName:
        return name_term(*e.name, out);
      case ExprKind::kVariable:
        return "?" + e.op;
      case ExprKind::kUnary:
        return e.op + child(e, e.children.at(0), true, out);
      case ExprKind::kBinary:
        return child(e, e.children.at(0), false, out) + " " + e.op + " " +
               child(e, e.children.at(1), true, out);
      case ExprKind::kCall: {
        std::string s = e.op + "(";
        for (std::size_t i = 0; i < e.children.size(); ++i) {
          if (i > 0) s += ", ";
          s += expr(e.children[i], out);
        }
        return s + ")";
      }
      case ExprKind::kAggregate: {
        std::string s = e.op + "(";
        if (e.distinct) s += "DISTINCT ";
        if (!e.children.empty()) s += expr(e.children.front(), out);
        if (e.op == "GROUP_CONCAT") {
          s += "; SEPARATOR=" +
               quote_string(e.separator.value_or(params_.grouping_separator));
        }
        return s + ")";
      }
      case ExprKind::kExists:
        return (e.negated ? "NOT " : "") + exists_block(e.children.at(0));
      case ExprKind::kIn: {
        std::string s = child(e, e.children.at(0), false, out);
        s += e.negated ? " NOT IN (" : " IN (";
        for (std::size_t i = 1; i < e.children.size(); ++i) {
          if (i > 1) s += ", ";
          s += expr(e.children[i], out);
        }
        return s + ")";
      }
      case ExprKind::kClassExpr:
        return instance(node_);
      case ExprKind::kStar:
        return "*";
      case ExprKind::kRange:
      case ExprKind::kBetween:
      case ExprKind::kValueScope:
      case ExprKind::kTuple:
      case ExprKind::kControl:
        diags_.error("values",
                     "'" + to_canonical(e) + "' cannot be used inside an "
                                             "expression",
                     element_);
        return "\"\"";
    }
    return {};
  }

 public:
  // "EXISTS{triples FILTER(inner)}"; a bare navigation needs no filter.
  std::string exists_block(const Expr& inner) {
    std::vector<Navigation> nested;
    std::string text = expr(inner, nested);
    std::string s = "EXISTS{";
    for (const Navigation& n : nested) s += n.triple + " ";
    bool bare = inner.kind == ExprKind::kName &&
                !(inner.name->resolution && inner.name->resolution->alias_start &&
                  inner.name->is_single_step());
    if (!bare) s += "FILTER(" + text + ")";
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "}";
  }

 private:
  const Ast& ast_;
  const VariableMap& vm_;
  const Params& params_;
  Diagnostics& diags_;
  std::size_t node_ = 0;
  std::string element_;
};

std::string role_term(const std::string& role) {
  if (role.find("://") != std::string::npos && !role.starts_with("<")) {
    return "<" + role + ">";
  }
  return role;
}

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

std::vector<std::string> triples(const std::vector<Navigation>& navs) {
  std::vector<std::string> out;
  for (const Navigation& n : navs) out.push_back(n.triple);
  return out;
}

class Builder {
 public:
  Builder(const Ast& ast, const VariableMap& vm, const Params& params,
          Diagnostics& diags)
      : ast_(ast),
        vm_(vm),
        params_(params),
        diags_(diags),
        writer_(ast, vm, params, diags) {
    for (const AstNode& n : ast_.nodes()) {
      definition_node_[n.info.id] = n.index;
      for (const AstField& f : n.fields) definition_node_[f.id] = n.index;
      for (const AstAggregation& a : n.aggregations) {
        definition_node_[a.id] = n.index;
      }
    }
  }

  GenModel run() {
    model_.params = params_;
    model_.nodes.resize(ast_.nodes().size());
    for (const AstNode& n : ast_.nodes()) init_node(n);
    for (std::size_t i : ast_.preorder()) {
      const AstNode& n = ast_.node(i);
      fields(n);
      conditions(n);
      aggregations(n);
      groupings(n);
      orderings(n);
      reference_links(n);
    }
    for (std::size_t i : ast_.preorder()) outside_references(ast_.node(i));
    for (std::size_t i : ast_.preorder()) {
      if (model_.nodes[i].parent && ast_.edge_type(i) != EdgeType::kSubquery) {
        continue;
      }
      block_select(i);
    }
    return std::move(model_);
  }

 private:
  GenNode& gen(std::size_t i) { return model_.nodes[i]; }

  bool in_negation(std::size_t i) const {
    for (std::optional<std::size_t> cur = i; cur && ast_.node(*cur).parent;
         cur = ast_.node(*cur).parent) {
      const AstNode& n = ast_.node(*cur);
      if (ast_.edge_type(*cur) == EdgeType::kUnion) continue;
      if (n.link->mode == LinkMode::kNegated || n.link->existence_check) {
        return true;
      }
    }
    return false;
  }

  std::string membership(bool indirect) const {
    if (indirect) {
      if (params_.indirect_class_membership_role) {
        return role_term(*params_.indirect_class_membership_role);
      }
      return "a/rdfs:subClassOf*";
    }
    if (params_.direct_class_membership_role) {
      return role_term(*params_.direct_class_membership_role);
    }
    return "a";
  }

  void init_node(const AstNode& n) {
    GenNode& g = gen(n.index);
    g.index = n.index;
    g.id = n.info.id;
    g.parent = n.parent;
    g.children = n.children;
    g.node_type = n.info.node_type;
    g.edge = ast_.edge_type(n.index);
    g.distinct = n.info.distinct;
    g.limit = n.limit;
    g.offset = n.offset;
    g.full_sparql = n.full_sparql;
    g.full_sparql_is_subquery = n.full_sparql_is_subquery;
    g.class_instance = vm_.term(n.info.id);
    bool negated = in_negation(n.index);

    if (n.info.node_type == NodeType::kData) {
      std::string role = membership(n.info.indirect_membership);
      if (n.info.class_variable) {
        std::string cv = "?" + *n.info.class_variable;
        g.class_definition = g.class_instance + " " + role + " " + cv + ".";
        if (!n.info.class_variable_hidden && !negated) {
          push_unique(g.select.simple_variables, cv);
        }
      } else if (n.info.class_text && !n.info.class_term.empty()) {
        g.class_definition =
            g.class_instance + " " + role + " " + n.info.class_term + ".";
      }
    }

    if (!n.link) return;
    const LinkInfo& l = *n.link;
    g.mode = l.mode;
    g.subquery = g.edge == EdgeType::kSubquery;
    g.existence_check = l.existence_check;
    g.global = l.global;
    const AstNode& p = ast_.node(*n.parent);
    std::string host = vm_.term(p.info.id);
    if (!l.is_free && !l.is_same_instance) {
      std::string path;
      if (l.path_variable) {
        path = "?" + *l.path_variable;
        if (!l.path_variable_hidden && !negated) {
          push_unique(g.select.simple_variables, path);
        }
      } else if (l.parsed_path) {
        path = path_text(*l.parsed_path->name, 0);
      }
      if (!path.empty()) {
        g.link_definition = host + " " + path + " " + g.class_instance + ".";
      }
    }
    bool linked = !g.link_definition.empty() || l.is_same_instance;
    if (g.subquery && !l.global && linked &&
        p.info.node_type == NodeType::kData && !vm_.is_constant(p.info.id)) {
      g.host_variable = host;
    }
  }

  std::string value_item(const Expr& v, std::size_t node,
                         const std::string& element) {
    std::vector<Navigation> ignored;
    if (v.kind == ExprKind::kName) {
      const PathStep& s = v.name->alternatives.front().front();
      return s.term.empty() ? s.text : s.term;
    }
    return writer_.write(v, node, element, ignored);
  }

  std::optional<std::string> values_clause(const Expr& scope,
                                           const std::string& var,
                                           std::size_t node,
                                           const std::string& element) {
    std::string items;
    for (const Expr& c : scope.children) {
      if (c.kind == ExprKind::kTuple) {
        diags_.error("values", "tuple value lists are not supported",
                     element);
        return std::nullopt;
      }
      if (c.kind == ExprKind::kRange) {
        long long lo = std::stoll(c.children.at(0).op);
        long long hi = std::stoll(c.children.at(1).op);
        for (long long k = lo; k <= hi; ++k) items += " " + std::to_string(k);
        continue;
      }
      items += " " + value_item(c, node, element);
    }
    return "VALUES " + var + " {" + items + " }";
  }

  static bool is_reference(const Expr& e) {
    return e.kind == ExprKind::kName && !e.name->constant_mark &&
           e.name->resolution && e.name->resolution->alias_start &&
           !e.name->resolution->definitions.empty() && e.name->is_single_step();
  }

  Expr prepared(const Expr& e) const {
    return convert_string_literal_comparison(apply_engine_transforms(e, params_),
                                             params_);
  }

  void fields(const AstNode& n) {
    GenNode& g = gen(n.index);
    bool negated = in_negation(n.index);
    for (const AstField& f : n.fields) {
      if (!f.parsed_exp) continue;
      Expr e = prepared(*f.parsed_exp);
      std::string fv = vm_.term(f.id);
      AttributeDefinition def;
      def.element = f.id;
      def.require_values = f.require_values;
      std::vector<Navigation> navs;
      if (e.kind == ExprKind::kValueScope) {
        def.values_clause = values_clause(e, fv, n.index, f.id);
        def.require_values = true;
      } else if (is_reference(e)) {
        std::string ref = writer_.write(e, n.index, f.id, navs);
        if (ref != fv) def.bind_clauses.push_back("BIND(" + ref + " AS " + fv + ")");
        def.require_values = true;
      } else if (e.kind == ExprKind::kName && e.name->constant_mark) {
        std::string t = writer_.write(e, n.index, f.id, navs);
        def.bind_clauses.push_back("BIND(" + t + " AS " + fv + ")");
        def.require_values = true;
      } else if (e.kind == ExprKind::kName) {
        writer_.write(e, n.index, f.id, navs);
        def.triple_patterns = triples(navs);
        const auto& tags = f.parsed_exp->name->lang_tags;
        if (tags.size() == 1) {
          def.filters.push_back("FILTER(LANG(" + fv + ") = " +
                                quote_string(tags.front()) + ")");
        } else if (tags.size() > 1) {
          std::string list;
          for (const std::string& t : tags) {
            list += (list.empty() ? "" : ", ") + quote_string(t);
          }
          def.filters.push_back("FILTER(LANG(" + fv + ") IN (" + list + "))");
        }
      } else if (contains_aggregate(e)) {
        std::string text = writer_.write(e, n.index, f.id, navs);
        std::string inst = g.class_instance;
        std::string body;
        for (const Navigation& x : navs) body += x.triple;
        def.local_subquery = "{SELECT " + inst + " (" + text + " AS " + fv +
                             ") WHERE{" + body + "} GROUP BY " + inst + "}";
      } else {
        std::string text = writer_.write(e, n.index, f.id, navs);
        def.triple_patterns = triples(navs);
        def.bind_clauses.push_back("BIND(" + text + " AS " + fv + ")");
        if (f.require_values && !is_total(e)) {
          def.bound_clause = "FILTER(BOUND(" + fv + "))";
        }
      }
      g.attributes.push_back(std::move(def));
      if (negated) continue;
      if (!f.helper) push_unique(g.select.simple_variables, fv);
      if (f.label_service != LabelService::kNone) label(g, f, fv);
    }
  }

  void label(GenNode& g, const AstField& f, const std::string& fv) {
    if (!params_.enable_wikibase_label_services) {
      diags_.warning("label",
                     "label services are disabled; the label mark is ignored",
                     f.id);
      return;
    }
    auto lv = vm_.get(label_key(f.id));
    if (!lv) return;
    std::string var = "?" + *lv;
    static constexpr const char* kPredicate[] = {"", "rdfs:label",
                                                 "skos:altLabel",
                                                 "schema:description"};
    push_unique(g.select.label_variables, var);
    g.label_triples.push_back(fv + " " +
                              kPredicate[static_cast<int>(f.label_service)] +
                              " " + var + ".");
  }

  // "name = value" conditions that can be written as one triple.
  std::optional<std::string> triple_form(const Expr& e, std::size_t node,
                                         const std::string& element) {
    if (e.kind != ExprKind::kBinary || e.op != "=") return std::nullopt;
    for (int side = 0; side < 2; ++side) {
      const Expr& l = e.children[side];
      const Expr& r = e.children[1 - side];
      if (l.kind != ExprKind::kName || l.name->constant_mark ||
          is_reference(l) || !l.name->lang_tags.empty()) {
        continue;
      }
      bool value = false;
      if (r.kind == ExprKind::kLiteral) {
        value = r.literal_kind != LiteralKind::kString;
      } else if (r.kind == ExprKind::kName && r.name->constant_mark) {
        value = true;
      } else if (is_reference(r)) {
        const NameResolution& res = *r.name->resolution;
        value = res.kind == NameKind::kClassAlias && !res.value_only;
      }
      if (!value) continue;
      std::vector<Navigation> navs;
      std::string object = writer_.write(r, node, element, navs);
      navs.clear();
      writer_.write(l, node, element, navs);
      if (navs.size() != 1) return std::nullopt;
      std::string t = navs.front().triple;
      std::size_t cut = t.rfind(' ');
      return t.substr(0, cut) + " " + object + ".";
    }
    return std::nullopt;
  }

  void conditions(const AstNode& n) {
    GenNode& g = gen(n.index);
    for (const AstCondition& c : n.conditions) {
      if (!c.parsed_exp) continue;
      Expr e = prepared(*c.parsed_exp);
      if (e.kind == ExprKind::kValueScope) {
        AttributeDefinition def;
        def.element = c.id;
        def.require_values = true;
        def.values_clause = values_clause(e, g.class_instance, n.index, c.id);
        g.attributes.push_back(std::move(def));
        continue;
      }
      if (c.form == ConditionForm::kAuto) {
        if (auto t = triple_form(e, n.index, c.id)) {
          g.filters_as_triples.push_back(*t);
          continue;
        }
      }
      std::vector<Navigation> navs;
      std::string text = writer_.write(e, n.index, c.id, navs);
      FilterDefinition f;
      f.element = c.id;
      bool multi = std::any_of(navs.begin(), navs.end(),
                               [](const Navigation& x) { return x.multi_valued; });
      bool exists = !navs.empty() && (c.form == ConditionForm::kFilterExists ||
                                      (c.form == ConditionForm::kAuto && multi));
      if (exists) {
        std::string body;
        for (const Navigation& x : navs) body += x.triple + " ";
        f.filter_text = "FILTER EXISTS{" + body + "FILTER(" + text + ")}";
      } else {
        f.base_triples = triples(navs);
        f.filter_text = "FILTER(" + text + ")";
      }
      g.filters.push_back(std::move(f));
    }
  }

  void aggregations(const AstNode& n) {
    GenNode& g = gen(n.index);
    bool negated = in_negation(n.index);
    for (const AstAggregation& a : n.aggregations) {
      if (!a.parsed_exp) continue;
      Expr e = prepared(*a.parsed_exp);
      std::vector<Navigation> navs;
      std::string text = writer_.write(e, n.index, a.id, navs);
      for (const Navigation& x : navs) push_unique(g.aggregation_base, x.triple);
      if (!negated) {
        g.select.aggregate_variables.push_back({vm_.term(a.id), text});
      }
    }
  }

  static bool is_variable(const std::string& t) {
    return t.size() > 1 && t[0] == '?' &&
           t.find_first_of(" ()") == std::string::npos;
  }

  void groupings(const AstNode& n) {
    GenNode& root = gen(ast_.block_root(n.index));
    for (const AstGrouping& gr : n.groupings) {
      if (!gr.parsed_exp) continue;
      Expr e = prepared(*gr.parsed_exp);
      std::vector<Navigation> navs;
      std::string text = writer_.write(e, n.index, gr.id, navs);
      push_unique(root.group_by.groups, is_variable(text) ? text : "(" + text + ")");
      for (const Navigation& x : navs) {
        push_unique(root.group_by.triple_patterns, x.triple);
      }
    }
  }

  void orderings(const AstNode& n) {
    GenNode& root = gen(ast_.block_root(n.index));
    for (const AstOrdering& o : n.orderings) {
      if (!o.parsed_exp) continue;
      Expr e = prepared(*o.parsed_exp);
      std::vector<Navigation> navs;
      std::string text = writer_.write(e, n.index, o.id, navs);
      if (o.descending) {
        root.order_by.clauses.push_back("DESC(" + text + ")");
      } else {
        root.order_by.clauses.push_back(is_variable(text) ? text
                                                          : "(" + text + ")");
      }
      for (const Navigation& x : navs) {
        push_unique(root.order_by.triple_patterns, x.triple);
        std::string var = x.triple.substr(x.triple.rfind(' ') + 1);
        var.pop_back();
        push_unique(root.order_by.variables, var);
      }
      for (const NameEntity* ne : collect_name_entities(e)) {
        if (!ne->resolution || !ne->resolution->alias_start ||
            !ne->is_single_step() || ne->resolution->definitions.empty() ||
            ne->resolution->kind == NameKind::kAggregateAlias) {
          continue;
        }
        push_unique(root.order_by.variables,
                    vm_.term(ne->resolution->definitions.front()));
      }
    }
  }

  void reference_links(const AstNode& n) {
    for (const AstReferenceLink& r : n.reference_links) {
      std::size_t s = n.index;
      std::size_t t = ast_.index_of(r.target);
      std::string path;
      if (r.path_variable) {
        path = "?" + *r.path_variable;
      } else if (r.parsed_path) {
        path = path_text(*r.parsed_path->name, 0);
      } else {
        continue;
      }
      std::string triple = vm_.term(n.info.id) + " " + path + " " +
                           vm_.term(ast_.node(t).info.id) + ".";
      std::size_t at = ast_.is_ancestor(s, t) ? t : s;
      std::size_t other = at == s ? t : s;
      GenNode& g = gen(at);
      if (r.mode == LinkMode::kNegated) {
        g.negated_reference_links.push_back(triple);
        continue;
      }
      g.reference_links.push_back(triple);
      if (in_negation(at)) continue;
      if (r.path_variable && !r.path_variable_hidden) {
        push_unique(g.select.simple_variables, path);
      }
      if (ast_.block_root(other) != ast_.block_root(at)) {
        push_unique(g.select.simple_variables,
                    vm_.term(ast_.node(other).info.id));
      }
    }
  }

  // Names used in a subquery but defined in an enclosing block are
  // exported and re-bound inside the block.
  void outside_references(const AstNode& n) {
    std::size_t block = ast_.block_root(n.index);
    if (!ast_.node(block).parent) return;
    GenNode& root = gen(block);
    auto visit = [&](const std::optional<Expr>& e) {
      if (!e) return;
      for (const NameEntity* ne : collect_name_entities(*e)) {
        if (!ne->resolution || !ne->resolution->alias_start) continue;
        for (const std::string& def : ne->resolution->definitions) {
          auto it = definition_node_.find(def);
          if (it == definition_node_.end()) continue;
          std::size_t d = it->second;
          if (ast_.block_root(d) == block || ast_.is_ancestor(block, d)) continue;
          std::string var = vm_.term(def);
          if (root.host_variable == var) continue;
          if (!in_negation(n.index)) {
            push_unique(gen(n.index).select.simple_variables, var);
          }
          for (const std::string& t : grounding_of(def, d)) {
            push_unique(root.grounding, t);
          }
        }
      }
    };
    for (const AstField& f : n.fields) visit(f.parsed_exp);
    for (const AstCondition& c : n.conditions) visit(c.parsed_exp);
    for (const AstAggregation& a : n.aggregations) visit(a.parsed_exp);
  }

  std::vector<std::string> grounding_of(const std::string& def, std::size_t d) {
    const GenNode& g = gen(d);
    if (def == g.id) {
      if (g.class_definition.empty()) return {};
      return {g.class_definition};
    }
    std::vector<std::string> out;
    if (!g.class_definition.empty()) out.push_back(g.class_definition);
    for (const AttributeDefinition& a : g.attributes) {
      if (a.element != def) continue;
      out.insert(out.end(), a.triple_patterns.begin(), a.triple_patterns.end());
      out.insert(out.end(), a.bind_clauses.begin(), a.bind_clauses.end());
    }
    return out;
  }

  void block_select(std::size_t r) {
    GenNode& root = gen(r);
    SelectBlock& s = root.block_select;
    if (root.host_variable) s.simple_variables.push_back(*root.host_variable);
    for (std::size_t i : ast_.preorder()) {
      if (ast_.block_root(i) != r || in_negation(i) != in_negation(r)) continue;
      const SelectBlock& b = gen(i).select;
      for (const std::string& v : b.simple_variables) {
        push_unique(s.simple_variables, v);
      }
      for (const AggregateVariable& a : b.aggregate_variables) {
        s.aggregate_variables.push_back(a);
      }
      for (const std::string& v : b.label_variables) {
        push_unique(s.label_variables, v);
      }
    }
    if (s.aggregate_variables.empty() && root.group_by.groups.empty()) return;
    std::set<std::string> aggregated;
    for (const AggregateVariable& a : s.aggregate_variables) {
      aggregated.insert(a.name);
    }
    auto add = [&](const std::string& v) {
      if (aggregated.count(v) == 0 &&
          std::find(root.group_by.groups.begin(), root.group_by.groups.end(),
                    v) == root.group_by.groups.end()) {
        push_unique(root.implicit_group_by, v);
      }
    };
    for (const std::string& v : s.simple_variables) add(v);
    for (const std::string& v : s.label_variables) add(v);
    for (const std::string& v : root.order_by.variables) add(v);
  }

  const Ast& ast_;
  const VariableMap& vm_;
  const Params& params_;
  Diagnostics& diags_;
  ExprWriter writer_;
  GenModel model_;
  std::map<std::string, std::size_t> definition_node_;
};

Expr convert(const Expr& e, const Params& p) {
  Expr out = e;
  for (Expr& c : out.children) c = convert(c, p);
  if (out.kind != ExprKind::kBinary || !is_comparison(out.op) ||
      p.string_literal_conversion == StringLiteralConversion::kOff) {
    return out;
  }
  for (int side = 0; side < 2; ++side) {
    Expr& prop = out.children[side];
    Expr& other = out.children[1 - side];
    if (!is_string_property(prop) || !is_string_expression(other)) continue;
    if (p.string_literal_conversion == StringLiteralConversion::kSimple) {
      prop = Expr::call("STR", {prop});
    } else if (is_plain_string(other)) {
      other.datatype = "xsd:string";
    }
    break;
  }
  return out;
}

void dump_list(std::ostringstream& os, const char* label,
               const std::vector<std::string>& items, int depth) {
  if (items.empty()) return;
  std::string pad(depth * 2, ' ');
  os << pad << label << ":\n";
  for (const std::string& s : items) os << pad << "  " << s << "\n";
}

}  // namespace

Expr convert_string_literal_comparison(const Expr& e, const Params& params) {
  return convert(e, params);
}

GenModel build_generation_model(const Ast& ast, const SymbolTable& st,
                                const VariableMap& vm, const Params& params,
                                const Schema& schema, Diagnostics& diags) {
  (void)st;
  (void)schema;
  return Builder(ast, vm, params, diags).run();
}

std::string dump_generation_model(const GenModel& g) {
  std::ostringstream os;
  for (const GenNode& n : g.nodes) {
    int depth = 0;
    for (auto p = n.parent; p; p = g.nodes[*p].parent) ++depth;
    std::string pad(depth * 2, ' ');
    os << pad << "node " << n.id << " " << n.class_instance << " ("
       << to_string(n.edge) << ")\n";
    std::vector<std::string> defs;
    if (!n.link_definition.empty()) defs.push_back(n.link_definition);
    if (!n.class_definition.empty()) defs.push_back(n.class_definition);
    dump_list(os, "definitions", defs, depth + 1);
    if (n.host_variable) os << pad << "  host: " << *n.host_variable << "\n";
    dump_list(os, "select", n.select.simple_variables, depth + 1);
    std::vector<std::string> aggs;
    for (const AggregateVariable& a : n.select.aggregate_variables) {
      aggs.push_back("(" + a.expression + " AS " + a.name + ")");
    }
    dump_list(os, "aggregate", aggs, depth + 1);
    dump_list(os, "labels", n.select.label_variables, depth + 1);
    for (const AttributeDefinition& a : n.attributes) {
      std::vector<std::string> parts = a.triple_patterns;
      parts.insert(parts.end(), a.bind_clauses.begin(), a.bind_clauses.end());
      if (a.bound_clause) parts.push_back(*a.bound_clause);
      parts.insert(parts.end(), a.filters.begin(), a.filters.end());
      if (a.values_clause) parts.push_back(*a.values_clause);
      if (a.local_subquery) parts.push_back(*a.local_subquery);
      std::string label = "attribute " + a.element +
                          (a.require_values ? " (required)" : "");
      dump_list(os, label.c_str(), parts, depth + 1);
    }
    dump_list(os, "aggregation base", n.aggregation_base, depth + 1);
    dump_list(os, "filters as triples", n.filters_as_triples, depth + 1);
    for (const FilterDefinition& f : n.filters) {
      std::vector<std::string> parts = f.base_triples;
      parts.push_back(f.filter_text);
      std::string label = "filter " + f.element;
      dump_list(os, label.c_str(), parts, depth + 1);
    }
    dump_list(os, "reference links", n.reference_links, depth + 1);
    dump_list(os, "negated reference links", n.negated_reference_links,
              depth + 1);
    dump_list(os, "group by", n.group_by.groups, depth + 1);
    dump_list(os, "implicit group by", n.implicit_group_by, depth + 1);
    dump_list(os, "order by", n.order_by.clauses, depth + 1);
    dump_list(os, "grounding", n.grounding, depth + 1);
  }
  return os.str();
}

}  // namespace vqc
