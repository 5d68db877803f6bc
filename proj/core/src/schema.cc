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

#include "vqc/schema.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "json_util.h"

namespace vqc {

namespace {

using internal::Json;

constexpr std::array<std::pair<std::string_view, std::string_view>, 9>
    kWellKnown = {{
        {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
        {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
        {"xsd", "http://www.w3.org/2001/XMLSchema#"},
        {"owl", "http://www.w3.org/2002/07/owl#"},
        {"wikibase", "http://wikiba.se/ontology#"},
        {"bd", "http://www.bigdata.com/rdf#"},
        {"bif", "bif:"},
        {"skos", "http://www.w3.org/2004/02/skos/core#"},
        {"schema", "http://schema.org/"},
    }};

bool is_prefix_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '-' || c == '.';
}

// Splits "prefix:rest" when the part before the first ':' is a valid
// prefix; returns nullopt for plain names.
std::optional<std::pair<std::string_view, std::string_view>> split_prefixed(
    std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::string_view prefix = text.substr(0, colon);
  if (!std::all_of(prefix.begin(), prefix.end(), is_prefix_char)) {
    return std::nullopt;
  }
  return std::make_pair(prefix, text.substr(colon + 1));
}

EntityRef read_entity(const Json& j, EntityKind kind, std::size_t position) {
  std::string where = std::string(kind == EntityKind::kClass ? "class"
                                                             : "property") +
                      " #" + std::to_string(position);
  if (kind == EntityKind::kClass) {
    internal::check_keys(j, {"iri", "prefix", "localName", "displayName"},
                         where);
  } else {
    internal::check_keys(
        j,
        {"iri", "prefix", "localName", "displayName", "dataType",
         "maxCardinality", "inverseMaxCardinality", "propertyType",
         "objectCnt", "dataCnt"},
        where);
  }
  EntityRef e;
  e.entity_kind = kind;
  e.is_local = true;
  e.local_name = internal::req_string(j, "localName", where);
  e.prefix = internal::opt_string(j, "prefix", where).value_or("");
  e.iri = internal::opt_string(j, "iri", where).value_or("");
  e.display_name =
      internal::opt_string(j, "displayName", where).value_or(e.local_name);
  if (e.display_name.empty()) e.display_name = e.local_name;
  if (kind == EntityKind::kProperty) {
    PropertyInfo p;
    p.data_type = internal::opt_string(j, "dataType", where);
    p.max_cardinality = static_cast<int>(
        internal::opt_int(j, "maxCardinality", where).value_or(-1));
    p.inverse_max_cardinality = static_cast<int>(
        internal::opt_int(j, "inverseMaxCardinality", where).value_or(-1));
    p.object_cnt = internal::opt_int(j, "objectCnt", where).value_or(0);
    p.data_cnt = internal::opt_int(j, "dataCnt", where).value_or(0);
    auto type = internal::opt_string(j, "propertyType", where);
    if (!type || *type == "DATA_PROPERTY") {
      p.property_type = PropertyType::kDataProperty;
    } else if (*type == "OBJECT_PROPERTY") {
      p.property_type = PropertyType::kObjectProperty;
    } else {
      throw FormatError(where + ": unknown propertyType '" + *type + "'");
    }
    if (p.max_cardinality == 0 || p.max_cardinality < -1) {
      throw LoadError(where + ": maxCardinality must be -1 or >= 1");
    }
    e.property = p;
  }
  return e;
}

}  // namespace

std::optional<std::string> well_known_namespace(std::string_view prefix) {
  for (const auto& [p, iri] : kWellKnown) {
    if (p == prefix) return std::string(iri);
  }
  return std::nullopt;
}

bool is_plain_local_name(std::string_view local) {
  if (local.empty()) return true;
  if (local.front() == '-' || local.front() == '.' || local.back() == '.') {
    return false;
  }
  return std::all_of(local.begin(), local.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '-' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
  });
}

Schema::Schema(std::string name, std::vector<Namespace> namespaces,
               std::string default_prefix, std::vector<EntityRef> classes,
               std::vector<EntityRef> properties)
    : name_(std::move(name)),
      namespaces_(std::move(namespaces)),
      default_prefix_(std::move(default_prefix)),
      classes_(std::move(classes)),
      properties_(std::move(properties)) {
  index();
}

void Schema::index() {
  std::set<std::string> seen;
  for (const Namespace& ns : namespaces_) {
    if (ns.iri.empty()) {
      throw LoadError("namespace '" + ns.prefix + "' has an empty IRI");
    }
    if (!seen.insert(ns.prefix).second) {
      throw LoadError("duplicate namespace prefix '" + ns.prefix + "'");
    }
  }
  if (!seen.count(default_prefix_)) {
    throw LoadError("default namespace '" + default_prefix_ +
                    "' is not declared");
  }

  auto index_kind = [&](std::vector<EntityRef>& entities, EntityKind kind,
                        auto& by_local, auto& by_display) {
    for (std::size_t i = 0; i < entities.size(); ++i) {
      EntityRef& e = entities[i];
      e.entity_kind = kind;
      if (!seen.count(e.prefix)) {
        throw LoadError("entity '" + e.local_name +
                        "' uses undeclared prefix '" + e.prefix + "'");
      }
      std::string expected = expand_name(e.prefix, e.local_name);
      if (e.iri.empty()) {
        e.iri = expected;
      } else if (e.iri != expected) {
        load_diagnostics_.warning(
            "schema-iri-mismatch",
            "entity '" + e.local_name + "' iri " + e.iri +
                " differs from namespace + local name " + expected);
      }
      if (e.display_name.empty()) e.display_name = e.local_name;
      auto& locals = by_local[{e.prefix, e.local_name}];
      if (!locals.empty()) {
        load_diagnostics_.warning("schema-duplicate-local-name",
                                  "local name '" + e.local_name +
                                      "' is used by more than one entity");
      }
      locals.push_back(i);
      auto [it, inserted] =
          by_display.insert_or_assign({e.prefix, e.display_name}, i);
      if (!inserted) {
        load_diagnostics_.warning(
            "schema-duplicate-display-name",
            "display name '" + e.display_name + "' is not unique; last wins");
      }
      by_iri_.insert_or_assign(e.iri, std::make_pair(kind, i));
    }
  };
  index_kind(classes_, EntityKind::kClass, class_by_local_,
             class_by_display_);
  index_kind(properties_, EntityKind::kProperty, property_by_local_,
             property_by_display_);
}

Schema Schema::load(std::string_view document) {
  Json j = internal::parse_json(document, "schema");
  internal::check_keys(j,
                       {"name", "defaultNamespace", "namespaces", "classes",
                        "properties"},
                       "schema");
  std::string name = internal::opt_string(j, "name", "schema").value_or("");
  std::vector<Namespace> namespaces;
  for (const Json& n : internal::opt_array(j, "namespaces", "schema")) {
    internal::check_keys(n, {"prefix", "iri"}, "namespace");
    namespaces.push_back(
        {internal::opt_string(n, "prefix", "namespace").value_or(""),
         internal::req_string(n, "iri", "namespace")});
  }
  std::string default_prefix;
  if (auto d = internal::opt_string(j, "defaultNamespace", "schema")) {
    default_prefix = *d;
    // Accept the namespace IRI as well as its prefix.
    for (const Namespace& ns : namespaces) {
      if (ns.iri == *d) default_prefix = ns.prefix;
    }
  } else if (namespaces.size() == 1) {
    default_prefix = namespaces.front().prefix;
  }
  std::vector<EntityRef> classes;
  std::vector<EntityRef> properties;
  std::size_t i = 0;
  // Entities without a prefix live in the default namespace.
  auto read = [&](const Json& e, EntityKind kind) {
    EntityRef r = read_entity(e, kind, i++);
    if (!e.contains("prefix")) r.prefix = default_prefix;
    return r;
  };
  for (const Json& c : internal::opt_array(j, "classes", "schema")) {
    classes.push_back(read(c, EntityKind::kClass));
  }
  i = 0;
  for (const Json& p : internal::opt_array(j, "properties", "schema")) {
    properties.push_back(read(p, EntityKind::kProperty));
  }
  return Schema(std::move(name), std::move(namespaces),
                std::move(default_prefix), std::move(classes),
                std::move(properties));
}

Schema Schema::load_file(const std::filesystem::path& path) {
  return load(internal::read_file(path));
}

const Namespace& Schema::default_namespace() const {
  for (const Namespace& ns : namespaces_) {
    if (ns.prefix == default_prefix_) return ns;
  }
  throw LoadError("schema has no default namespace");
}

bool Schema::is_declared_prefix(std::string_view prefix) const {
  return std::any_of(namespaces_.begin(), namespaces_.end(),
                     [&](const Namespace& ns) { return ns.prefix == prefix; });
}

std::optional<std::string> Schema::namespace_iri(
    std::string_view prefix) const {
  for (const Namespace& ns : namespaces_) {
    if (ns.prefix == prefix) return ns.iri;
  }
  return well_known_namespace(prefix);
}

std::string Schema::expand_name(std::string_view prefix,
                                std::string_view local) const {
  auto ns = namespace_iri(prefix);
  if (!ns) {
    throw ResolutionError("unknown prefix '" + std::string(prefix) + "'");
  }
  return *ns + std::string(local);
}

const EntityRef* Schema::find_by_iri(std::string_view iri) const {
  auto it = by_iri_.find(iri);
  if (it == by_iri_.end()) return nullptr;
  const auto& [kind, pos] = it->second;
  return kind == EntityKind::kClass ? &classes_[pos] : &properties_[pos];
}

const EntityRef* Schema::lookup_local(std::string_view prefix,
                                      std::string_view local, KindHint hint,
                                      std::string_view original) const {
  Key key{std::string(prefix), std::string(local)};
  auto pick = [&](const std::map<Key, std::vector<std::size_t>>& index,
                  const std::vector<EntityRef>& entities)
      -> const EntityRef* {
    auto it = index.find(key);
    if (it == index.end()) return nullptr;
    if (it->second.size() > 1) {
      throw ResolutionError("ambiguous name '" + std::string(original) +
                            "': use its display name form");
    }
    return &entities[it->second.front()];
  };
  if (hint != KindHint::kClass) {
    if (const EntityRef* e = pick(property_by_local_, properties_)) return e;
  }
  if (hint != KindHint::kProperty) {
    if (const EntityRef* e = pick(class_by_local_, classes_)) return e;
  }
  return nullptr;
}

const EntityRef* Schema::lookup_display(std::string_view prefix,
                                        std::string_view display,
                                        KindHint hint) const {
  Key key{std::string(prefix), std::string(display)};
  if (hint != KindHint::kClass) {
    auto it = property_by_display_.find(key);
    if (it != property_by_display_.end()) return &properties_[it->second];
  }
  if (hint != KindHint::kProperty) {
    auto it = class_by_display_.find(key);
    if (it != class_by_display_.end()) return &classes_[it->second];
  }
  return nullptr;
}

ResolvedEntity Schema::make_found(const EntityRef& e) const {
  ResolvedEntity r;
  r.found = true;
  r.entity = e;
  r.iri = e.iri;
  r.term = is_plain_local_name(e.local_name) ? e.prefix + ":" + e.local_name
                                             : "<" + e.iri + ">";
  return r;
}

ResolvedEntity Schema::resolve_entity(std::string_view name_form,
                                      KindHint hint) const {
  bool constant = false;
  std::string_view text = name_form;
  if (!text.empty() && text.front() == '`') {
    constant = true;
    text.remove_prefix(1);
  }
  if (text.empty()) throw ResolutionError("empty entity name");

  ResolvedEntity result;
  if (text.front() == '<') {
    if (text.back() != '>') {
      throw ResolutionError("unterminated IRI '" + std::string(text) + "'");
    }
    std::string iri(text.substr(1, text.size() - 2));
    if (const EntityRef* e = find_by_iri(iri)) {
      result = make_found(*e);
    } else {
      result.iri = iri;
      result.term = compact_iri(iri);
    }
  } else if (text.front() == '[') {
    if (text.back() != ']') {
      throw ResolutionError("unterminated display name '" +
                            std::string(text) + "'");
    }
    std::string_view display = text.substr(1, text.size() - 2);
    if (const EntityRef* e = lookup_display(default_prefix_, display, hint)) {
      result = make_found(*e);
    } else {
      throw ResolutionError("unknown display name '" + std::string(text) +
                            "'");
    }
  } else if (auto split = split_prefixed(text)) {
    auto [prefix, rest] = *split;
    if (!namespace_iri(prefix)) {
      throw ResolutionError("unknown prefix '" + std::string(prefix) + "'");
    }
    if (!rest.empty() && rest.front() == '[') {
      if (rest.back() != ']') {
        throw ResolutionError("unterminated display name '" +
                              std::string(text) + "'");
      }
      std::string_view display = rest.substr(1, rest.size() - 2);
      if (const EntityRef* e = lookup_display(prefix, display, hint)) {
        result = make_found(*e);
      } else {
        throw ResolutionError("unknown display name '" + std::string(text) +
                              "'");
      }
    } else if (const EntityRef* e = lookup_local(prefix, rest, hint, text)) {
      result = make_found(*e);
    } else {
      result.iri = expand_name(prefix, rest);
      result.term = is_plain_local_name(rest)
                        ? std::string(prefix) + ":" + std::string(rest)
                        : "<" + result.iri + ">";
    }
  } else {
    if (const EntityRef* e = lookup_local(default_prefix_, text, hint, text)) {
      result = make_found(*e);
    } else {
      result.iri = expand_name(default_prefix_, text);
      result.term = is_plain_local_name(text)
                        ? default_prefix_ + ":" + std::string(text)
                        : "<" + result.iri + ">";
    }
  }
  result.constant = constant;
  return result;
}

std::string Schema::compact_iri(std::string_view iri) const {
  // Longest matching declared namespace first.
  const Namespace* best = nullptr;
  for (const Namespace& ns : namespaces_) {
    if (iri.substr(0, ns.iri.size()) == ns.iri &&
        (!best || ns.iri.size() > best->iri.size())) {
      best = &ns;
    }
  }
  if (best) {
    std::string_view local = iri.substr(best->iri.size());
    if (is_plain_local_name(local)) {
      return best->prefix + ":" + std::string(local);
    }
  }
  for (const auto& [prefix, ns_iri] : kWellKnown) {
    if (prefix == "bif") continue;
    if (iri.substr(0, ns_iri.size()) == ns_iri) {
      std::string_view local = iri.substr(ns_iri.size());
      if (is_plain_local_name(local) && !is_declared_prefix(prefix)) {
        return std::string(prefix) + ":" + std::string(local);
      }
    }
  }
  return "<" + std::string(iri) + ">";
}

}  // namespace vqc
