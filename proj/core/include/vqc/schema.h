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

// Background data model: namespaces, classes and properties with the
// cardinality and datatype details the generator consults.

#ifndef VQC_SCHEMA_H_
#define VQC_SCHEMA_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vqc/diagnostics.h"

namespace vqc {

struct Namespace {
  std::string prefix;  // empty for the default ':' namespace
  std::string iri;
};

enum class EntityKind { kClass, kProperty };
enum class PropertyType { kDataProperty, kObjectProperty };
enum class KindHint { kClass, kProperty, kAny };

struct PropertyInfo {
  std::optional<std::string> data_type;  // e.g. "xsd:integer"
  int max_cardinality = -1;              // -1 = unbounded
  int inverse_max_cardinality = -1;      // loaded, never interpreted
  PropertyType property_type = PropertyType::kDataProperty;
  std::int64_t object_cnt = 0;  // statistics, loaded verbatim
  std::int64_t data_cnt = 0;
};

struct EntityRef {
  std::string iri;
  std::string prefix;
  std::string local_name;
  std::string display_name;
  EntityKind entity_kind = EntityKind::kClass;
  bool is_local = false;
  std::optional<PropertyInfo> property;  // set iff entity_kind == kProperty

  bool is_property() const { return entity_kind == EntityKind::kProperty; }
  bool single_valued() const {
    return property && property->max_cardinality == 1;
  }
};

// Outcome of resolving an entity name form against the schema.
struct ResolvedEntity {
  // Found in the schema; otherwise this is the unknown-marker carrying the
  // expanded IRI (still usable in generated SPARQL).
  bool found = false;
  std::optional<EntityRef> entity;
  std::string iri;
  // Printable SPARQL term: a prefixed name or <iri>.
  std::string term;
  // Back-tick form: a constant resource, not a value navigation.
  bool constant = false;
};

class Schema {
 public:
  Schema() = default;
  // Builds and indexes a schema. Throws LoadError on duplicate namespace
  // prefixes, a missing default namespace or undeclared entity prefixes.
  Schema(std::string name, std::vector<Namespace> namespaces,
         std::string default_prefix, std::vector<EntityRef> classes,
         std::vector<EntityRef> properties);

  // Parses the JSON schema file format. Throws FormatError (with byte
  // position) on malformed documents and LoadError on invariant violations.
  static Schema load(std::string_view document);
  static Schema load_file(const std::filesystem::path& path);

  const std::string& name() const { return name_; }
  const std::vector<Namespace>& namespaces() const { return namespaces_; }
  const Namespace& default_namespace() const;
  const std::vector<EntityRef>& classes() const { return classes_; }
  const std::vector<EntityRef>& properties() const { return properties_; }

  // Duplicate local/display names found while indexing.
  const Diagnostics& load_diagnostics() const { return load_diagnostics_; }

  // Declared namespace IRI for `prefix`, falling back to the well-known
  // rdf/rdfs/xsd/owl/wikibase/bd/bif vocabularies.
  std::optional<std::string> namespace_iri(std::string_view prefix) const;
  bool is_declared_prefix(std::string_view prefix) const;

  // Concatenates namespace IRI and local name; throws ResolutionError for
  // an unknown prefix.
  std::string expand_name(std::string_view prefix,
                          std::string_view local) const;

  // Resolves any of the name forms: plain, prefix:name, <iri>, [display],
  // prefix:[display], each optionally preceded by a back-tick. Throws
  // ResolutionError for unknown prefixes and ambiguous plain names.
  ResolvedEntity resolve_entity(std::string_view name_form,
                                KindHint hint = KindHint::kAny) const;

  const EntityRef* find_by_iri(std::string_view iri) const;

  // Shortest printable form of an IRI: prefix:local when a namespace
  // matches and the local part is a valid local name, else <iri>.
  std::string compact_iri(std::string_view iri) const;

 private:
  using Key = std::pair<std::string, std::string>;

  const EntityRef* lookup_local(std::string_view prefix,
                                std::string_view local, KindHint hint,
                                std::string_view original) const;
  const EntityRef* lookup_display(std::string_view prefix,
                                  std::string_view display,
                                  KindHint hint) const;
  ResolvedEntity make_found(const EntityRef& e) const;
  void index();

  std::string name_;
  std::vector<Namespace> namespaces_;
  std::string default_prefix_;
  std::vector<EntityRef> classes_;
  std::vector<EntityRef> properties_;

  // Positions into classes_ / properties_ so copies stay valid.
  std::map<Key, std::vector<std::size_t>> class_by_local_;
  std::map<Key, std::vector<std::size_t>> property_by_local_;
  std::map<Key, std::size_t> class_by_display_;
  std::map<Key, std::size_t> property_by_display_;
  std::map<std::string, std::pair<EntityKind, std::size_t>, std::less<>>
      by_iri_;
  Diagnostics load_diagnostics_;
};

// True if `local` can be written after "prefix:" without escaping.
bool is_plain_local_name(std::string_view local);

// Built-in vocabulary prefixes available without declaration.
std::optional<std::string> well_known_namespace(std::string_view prefix);

}  // namespace vqc

#endif  // VQC_SCHEMA_H_
