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

#include "vqc/variables.h"

#include <cctype>
#include <functional>

namespace vqc {

std::optional<std::string> VariableMap::get(std::string_view key) const {
  auto it = vars_.find(key);
  if (it == vars_.end()) return std::nullopt;
  return it->second;
}

bool VariableMap::is_constant(std::string_view key) const {
  return constants_.count(key) > 0;
}

std::string VariableMap::term(std::string_view key) const {
  auto it = vars_.find(key);
  if (it == vars_.end()) {
    throw ResolutionError("no variable for '" + std::string(key) + "'");
  }
  return is_constant(key) ? it->second : "?" + it->second;
}

void VariableMap::set(const std::string& key, const std::string& name) {
  vars_[key] = name;
  used_.insert(name);
}

void VariableMap::set_constant(const std::string& key,
                               const std::string& term) {
  vars_[key] = term;
  constants_.insert(key);
}

std::string VariableMap::fresh(std::string_view base) {
  std::string b = base.empty() ? std::string("v") : std::string(base);
  std::string name = b;
  for (int k = 1; used(name); ++k) name = b + "_" + std::to_string(k);
  used_.insert(name);
  return name;
}

std::string usage_key(std::string_view element_id, const NameEntity& name) {
  return std::string(element_id) + "|" + name.path_text();
}

std::string label_key(std::string_view field_id) {
  return std::string(field_id) + "|label";
}

std::string sanitize_variable(std::string_view text) {
  std::string out;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    out += (std::isalnum(u) || c == '_' || u >= 0x80) ? c : '_';
  }
  return out;
}

namespace {

// Local part of a path step, used as a variable base.
std::string step_base(const PathStep& s) {
  if (s.entity && !s.entity->local_name.empty()) {
    return sanitize_variable(s.entity->local_name);
  }
  std::string t = s.text;
  if (t == "a") return "type";
  if (t.starts_with("<")) {
    t = t.substr(1, t.size() - 2);
    std::size_t cut = t.find_last_of("#/");
    if (cut != std::string::npos) t = t.substr(cut + 1);
  } else {
    std::size_t colon = t.find(':');
    if (colon != std::string::npos) t = t.substr(colon + 1);
  }
  if (t.starts_with("[") && t.ends_with("]")) t = t.substr(1, t.size() - 2);
  return sanitize_variable(t);
}

std::string name_base(const NameEntity& n) {
  return step_base(n.alternatives.front().back());
}

bool is_reference(const NameEntity& n) {
  return n.resolution && n.resolution->alias_start &&
         n.alternatives.size() == 1 && n.path().size() == 1;
}

class Assigner {
 public:
  Assigner(const Ast& ast, Diagnostics& diags) : ast_(ast), diags_(diags) {
    for (const AstNode& n : ast_.nodes()) {
      nodes_[n.info.id] = n.index;
      for (const AstField& f : n.fields) fields_[f.id] = {n.index, &f};
      for (const AstAggregation& a : n.aggregations) {
        aggregations_[a.id] = {n.index, &a};
      }
    }
  }

  VariableMap run() {
    reserve_explicit();
    if (!ast_.nodes().empty()) visit(0);
    check_ambiguity();
    return std::move(vm_);
  }

 private:
  void reserve_explicit() {
    for (const AstNode& n : ast_.nodes()) {
      if (n.info.instance_alias && !n.info.instance_resource) {
        vm_.set(n.info.id, *n.info.instance_alias);
      }
      if (n.info.class_variable) {
        vm_.set(n.info.id + "#class", *n.info.class_variable);
      }
      if (n.link && n.link->path_variable) {
        vm_.set(n.link->id, *n.link->path_variable);
      }
      for (const AstReferenceLink& r : n.reference_links) {
        if (r.path_variable) vm_.set(r.id, *r.path_variable);
      }
      for (const AstField& f : n.fields) {
        if (f.alias) vm_.set(f.id, *f.alias);
      }
      for (const AstAggregation& a : n.aggregations) {
        if (a.alias) vm_.set(a.id, *a.alias);
      }
    }
  }

  void visit(std::size_t i) {
    const AstNode& n = ast_.node(i);
    node_var(i);
    for (const AstField& f : n.fields) field_var(i, f);
    for (const AstAggregation& a : n.aggregations) aggregation_var(i, a);
    for (const AstField& f : n.fields) {
      usages(f.id, f.parsed_exp);
      if (f.label_service != LabelService::kNone) {
        static constexpr const char* kSuffix[] = {"", "Label", "AltLabel",
                                                  "Description"};
        std::string base = vm_.get(f.id).value_or("v") +
                           kSuffix[static_cast<int>(f.label_service)];
        vm_.set(label_key(f.id), vm_.fresh(base));
      }
    }
    for (const AstAggregation& a : n.aggregations) usages(a.id, a.parsed_exp);
    for (const AstCondition& c : n.conditions) usages(c.id, c.parsed_exp);
    for (const AstGrouping& g : n.groupings) usages(g.id, g.parsed_exp);
    for (const AstOrdering& o : n.orderings) usages(o.id, o.parsed_exp);

    if (n.info.node_type == NodeType::kUnion) {
      // Alternatives may reuse the same automatic names.
      auto snapshot = vm_.used_names();
      auto all = snapshot;
      for (std::size_t c : n.children) {
        vm_.set_used_names(snapshot);
        visit(c);
        all.insert(vm_.used_names().begin(), vm_.used_names().end());
      }
      vm_.set_used_names(std::move(all));
    } else {
      for (std::size_t c : n.children) visit(c);
    }
  }

  std::string node_var(std::size_t i) {
    const AstNode& n = ast_.node(i);
    if (auto v = vm_.get(n.info.id)) return *v;
    if (n.info.instance_resource) {
      vm_.set_constant(n.info.id, n.info.instance_term);
      return n.info.instance_term;
    }
    bool shares_parent =
        n.parent && n.link &&
        (n.link->is_same_instance ||
         (n.info.node_type != NodeType::kData && n.link->local_name.empty()));
    if (shares_parent) {
      std::string v = node_var(*n.parent);
      if (vm_.is_constant(ast_.node(*n.parent).info.id)) {
        vm_.set_constant(n.info.id, v);
      } else {
        vm_.set(n.info.id, v);
      }
      return v;
    }
    std::string base;
    if (n.info.class_text && !n.info.local_name.empty()) {
      base = sanitize_variable(n.info.local_name);
    } else if (n.link && n.link->parsed_path) {
      base = name_base(*n.link->parsed_path->name);
    } else {
      base = "node";
    }
    std::string v = vm_.fresh(base);
    vm_.set(n.info.id, v);
    return v;
  }

  std::string field_var(std::size_t node, const AstField& f) {
    if (auto v = vm_.get(f.id)) {
      bind_single_name(f, *v);
      return *v;
    }
    if (guard_.count(f.id)) return vm_.fresh("v");
    guard_.insert(f.id);
    std::string v;
    const std::optional<Expr>& e = f.parsed_exp;
    if (e && e->kind == ExprKind::kName && is_reference(*e->name)) {
      v = reference_var(*e->name);
      vm_.set(f.id, v);
    } else {
      std::string base = "expr";
      if (e && e->kind == ExprKind::kName) {
        base = name_base(*e->name);
      } else if (e && e->kind == ExprKind::kAggregate) {
        base = aggregate_base(node, *e);
      }
      v = vm_.fresh(base);
      vm_.set(f.id, v);
    }
    bind_single_name(f, v);
    guard_.erase(f.id);
    return v;
  }

  // A field holding one property navigation names its value variable.
  void bind_single_name(const AstField& f, const std::string& v) {
    if (f.parsed_exp && f.parsed_exp->kind == ExprKind::kName &&
        !is_reference(*f.parsed_exp->name) &&
        !f.parsed_exp->name->constant_mark) {
      std::string key = usage_key(f.id, *f.parsed_exp->name);
      if (!vm_.get(key)) vm_.set(key, v);
    }
  }

  std::string aggregation_var(std::size_t node, const AstAggregation& a) {
    if (auto v = vm_.get(a.id)) return *v;
    std::string base = a.parsed_exp ? aggregate_base(node, *a.parsed_exp)
                                    : std::string("agg");
    std::string v = vm_.fresh(base);
    vm_.set(a.id, v);
    return v;
  }

  std::string aggregate_base(std::size_t node, const Expr& agg) {
    std::string arg = "expr";
    if (!agg.children.empty()) {
      const Expr& c = agg.children.front();
      if (c.kind == ExprKind::kClassExpr) {
        arg = node_var(node);
      } else if (c.kind == ExprKind::kStar) {
        arg = "all";
      } else if (c.kind == ExprKind::kName) {
        arg = is_reference(*c.name) ? reference_var(*c.name)
                                    : name_base(*c.name);
      }
    }
    return sanitize_variable(arg) + "_" + agg.op;
  }

  std::string reference_var(const NameEntity& n) {
    const auto& defs = n.resolution->definitions;
    return defs.empty() ? name_base(n) : definition_var(defs.front());
  }

  std::string definition_var(const std::string& def) {
    if (auto v = vm_.get(def)) return *v;
    if (auto it = nodes_.find(def); it != nodes_.end()) {
      return node_var(it->second);
    }
    if (auto it = fields_.find(def); it != fields_.end()) {
      return field_var(it->second.first, *it->second.second);
    }
    if (auto it = aggregations_.find(def); it != aggregations_.end()) {
      return aggregation_var(it->second.first, *it->second.second);
    }
    throw ResolutionError("unknown definition '" + def + "'");
  }

  void usages(const std::string& element, const std::optional<Expr>& e) {
    if (!e) return;
    for (const NameEntity* ne : collect_name_entities(*e)) {
      if (ne->constant_mark || is_reference(*ne)) continue;
      std::string key = usage_key(element, *ne);
      if (!vm_.get(key)) vm_.set(key, vm_.fresh(name_base(*ne)));
    }
  }

  void check_ambiguity() {
    auto check = [&](const std::string& element, const std::optional<Expr>& e) {
      if (!e) return;
      for (const NameEntity* ne : collect_name_entities(*e)) {
        if (!ne->resolution || !ne->resolution->alias_start) continue;
        const auto& defs = ne->resolution->definitions;
        std::set<std::string> vars;
        for (const std::string& d : defs) vars.insert(definition_var(d));
        if (vars.size() > 1) {
          diags_.error("ambiguous",
                       "name '" + ne->alternatives.front().front().text +
                           "' refers to definitions with different variables",
                       element);
        }
      }
    };
    for (const AstNode& n : ast_.nodes()) {
      for (const AstField& f : n.fields) check(f.id, f.parsed_exp);
      for (const AstAggregation& a : n.aggregations) check(a.id, a.parsed_exp);
      for (const AstCondition& c : n.conditions) check(c.id, c.parsed_exp);
      for (const AstGrouping& g : n.groupings) check(g.id, g.parsed_exp);
      for (const AstOrdering& o : n.orderings) check(o.id, o.parsed_exp);
    }
  }

  const Ast& ast_;
  Diagnostics& diags_;
  VariableMap vm_;
  std::map<std::string, std::size_t> nodes_;
  std::map<std::string, std::pair<std::size_t, const AstField*>> fields_;
  std::map<std::string, std::pair<std::size_t, const AstAggregation*>>
      aggregations_;
  std::set<std::string> guard_;
};

}  // namespace

VariableMap assign_variables(const Ast& ast, const SymbolTable& st,
                             Diagnostics& diags) {
  (void)st;
  return Assigner(ast, diags).run();
}

}  // namespace vqc
