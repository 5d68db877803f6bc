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

#include <gtest/gtest.h>

#include "test_support.h"
#include "vqc/params.h"
#include "vqc/schema.h"

namespace vqc {
namespace {

constexpr const char* kSmallSchema = R"({
  "name": "small",
  "namespaces": [{"prefix": "ex", "iri": "http://example.org/"}],
  "defaultNamespace": "ex",
  "classes": [{"localName": "Person", "displayName": "A person"},
              {"localName": "Place"}],
  "properties": [
    {"localName": "name", "dataType": "xsd:string", "maxCardinality": 1},
    {"localName": "knows", "propertyType": "OBJECT_PROPERTY"},
    {"localName": "Place", "propertyType": "OBJECT_PROPERTY"}
  ]
})";

TEST(SchemaTest, LoadsEntitiesAndNamespaces) {
  Schema s = Schema::load(kSmallSchema);
  EXPECT_EQ(s.name(), "small");
  ASSERT_EQ(s.classes().size(), 2u);
  ASSERT_EQ(s.properties().size(), 3u);
  EXPECT_EQ(s.default_namespace().iri, "http://example.org/");
  EXPECT_EQ(s.classes()[0].iri, "http://example.org/Person");
  EXPECT_TRUE(s.properties()[0].single_valued());
  EXPECT_FALSE(s.properties()[1].single_valued());
  EXPECT_EQ(s.properties()[1].property->property_type,
            PropertyType::kObjectProperty);
}

TEST(SchemaTest, ResolvesNameForms) {
  Schema s = Schema::load(kSmallSchema);
  for (std::string form : {"name", "ex:name", "<http://example.org/name>"}) {
    ResolvedEntity r = s.resolve_entity(form, KindHint::kProperty);
    EXPECT_TRUE(r.found) << form;
    EXPECT_EQ(r.iri, "http://example.org/name") << form;
    EXPECT_EQ(r.term, "ex:name") << form;
  }
  ResolvedEntity display = s.resolve_entity("[A person]", KindHint::kClass);
  EXPECT_TRUE(display.found);
  EXPECT_EQ(display.entity->local_name, "Person");
}

TEST(SchemaTest, KindHintSeparatesSameLocalName) {
  Schema s = Schema::load(kSmallSchema);
  EXPECT_EQ(s.resolve_entity("Place", KindHint::kClass).entity->entity_kind,
            EntityKind::kClass);
  EXPECT_EQ(
      s.resolve_entity("Place", KindHint::kProperty).entity->entity_kind,
      EntityKind::kProperty);
  // Expression positions mean properties first.
  EXPECT_EQ(s.resolve_entity("Place", KindHint::kAny).entity->entity_kind,
            EntityKind::kProperty);
}

TEST(SchemaTest, BacktickMarksConstant) {
  Schema s = Schema::load(kSmallSchema);
  ResolvedEntity r = s.resolve_entity("`rdf:type");
  EXPECT_TRUE(r.constant);
  EXPECT_EQ(r.iri, "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
}

TEST(SchemaTest, UnknownNamesKeepExpandedIri) {
  Schema s = Schema::load(kSmallSchema);
  ResolvedEntity r = s.resolve_entity("ex:missing");
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.iri, "http://example.org/missing");
  EXPECT_THROW(s.resolve_entity("nope:missing"), ResolutionError);
}

TEST(SchemaTest, CompactIri) {
  Schema s = Schema::load(kSmallSchema);
  EXPECT_EQ(s.compact_iri("http://example.org/x"), "ex:x");
  EXPECT_EQ(s.compact_iri("http://other.org/x"), "<http://other.org/x>");
  EXPECT_EQ(s.compact_iri("http://example.org/a/b"),
            "<http://example.org/a/b>");
}

TEST(SchemaTest, WellKnownPrefixes) {
  EXPECT_EQ(well_known_namespace("xsd"), "http://www.w3.org/2001/XMLSchema#");
  EXPECT_FALSE(well_known_namespace("zzz"));
}

TEST(SchemaTest, RejectsMalformedDocuments) {
  EXPECT_THROW(Schema::load("{"), FormatError);
  EXPECT_THROW(Schema::load(R"({"bogus": 1})"), FormatError);
  EXPECT_THROW(Schema::load(R"({
      "namespaces": [{"prefix": "a", "iri": "x:"}, {"prefix": "a", "iri": "y:"}]
    })"),
               LoadError);
}

TEST(SchemaTest, DuplicateLocalNamesAreDiagnosed) {
  Schema s = Schema::load(R"({
      "namespaces": [{"prefix": "", "iri": "http://e/"}],
      "classes": [{"localName": "A"}, {"localName": "A"}]})");
  EXPECT_FALSE(s.load_diagnostics().empty());
}

TEST(SchemaTest, HospitalFixtureLoads) {
  const Schema& s = test::hospital_schema();
  ResolvedEntity r = s.resolve_entity("caseRecordNo", KindHint::kProperty);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.entity->property->data_type, "xsd:integer");
  EXPECT_EQ(r.term, ":caseRecordNo");
}

TEST(ParamsTest, DefaultsAndRoundTrip) {
  Params p = parse_params("{}");
  EXPECT_EQ(p.string_literal_conversion, StringLiteralConversion::kSimple);
  EXPECT_EQ(p.query_engine_type, QueryEngine::kGeneral);
  EXPECT_EQ(p.grouping_separator, ", ");
  EXPECT_FALSE(p.enable_wikibase_label_services);

  p.string_literal_conversion = StringLiteralConversion::kTyped;
  p.query_engine_type = QueryEngine::kVirtuoso;
  p.grouping_separator = ";";
  p.indirect_class_membership_role = "wdt:P31/wdt:P279*";
  EXPECT_EQ(parse_params(serialize_params(p)), p);
}

TEST(ParamsTest, RejectsUnknownValues) {
  EXPECT_THROW(parse_params(R"({"stringLiteralConversion": "LOUD"})"),
               FormatError);
  EXPECT_THROW(parse_params(R"({"queryEngine": "GENERAL"})"), FormatError);
}

}  // namespace
}  // namespace vqc
