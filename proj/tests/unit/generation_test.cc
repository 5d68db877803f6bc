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

#include <chrono>

#include "spelling_pairs.h"
#include "test_support.h"
#include "vqc/sparql_tokens.h"

namespace vqc {
namespace {

using test::DocBuilder;

std::string compile_with(const QueryDocument& q, const Schema& s,
                         const Params& p = {}) {
  return compile(q, s, p);
}

TEST(GenerationTest, EpisodeCountGolden) {
  auto start = std::chrono::steady_clock::now();
  std::string out = test::compile_text(test::episode_count_document());
  auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_TRUE(tokens_equal(out, test::kEpisodeCountSparql)) << out;
  EXPECT_LT(elapsed, std::chrono::milliseconds(50));
}

TEST(GenerationTest, BindForComputedField) {
  DocBuilder b;
  b.main("n", "HospitalEpisode").alias("n").field("totalCost - 3", "t");
  std::string out = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(out, "?n :totalCost ?totalCost")) << out;
  EXPECT_TRUE(contains_tokens(out, "BIND(?totalCost - 3 AS ?t)")) << out;
  EXPECT_TRUE(contains_tokens(out, "SELECT ?t WHERE")) << out;
}

TEST(GenerationTest, ConstantConditionBecomesTriple) {
  DocBuilder b;
  b.main("h", "HospitalEpisode").alias("H").condition("id = 12345");
  std::string out = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(out, "?H :id 12345 .")) << out;
  EXPECT_EQ(out.find("FILTER"), std::string::npos) << out;
}

TEST(GenerationTest, MultiValuedConditionUsesFilterExists) {
  DocBuilder b;
  b.main("h", "HospitalEpisode").alias("H").condition("lengthInDays >= 10");
  Schema multi = test::hospital_with_cardinality("lengthInDays", -1);
  std::string out = compile_with(b.doc(), multi);
  EXPECT_TRUE(contains_tokens(
      out,
      "FILTER EXISTS{?H :lengthInDays ?lengthInDays. "
      "FILTER(?lengthInDays >= 10)}"))
      << out;

  std::string single = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(single, "?H :lengthInDays ?lengthInDays."))
      << single;
  EXPECT_TRUE(contains_tokens(single, "FILTER(?lengthInDays >= 10)"))
      << single;
  EXPECT_EQ(single.find("EXISTS"), std::string::npos) << single;
}

TEST(GenerationTest, ConditionFormOverrides) {
  DocBuilder b;
  b.main("h", "HospitalEpisode")
      .alias("H")
      .condition("lengthInDays >= 10", ConditionForm::kFilterExists);
  EXPECT_TRUE(contains_tokens(test::compile_text(b.doc()), "FILTER EXISTS"));
}

TEST(GenerationTest, LocalAggregateSubquery) {
  DocBuilder b;
  b.main("h", "HospitalEpisode").alias("H").field("count(id)");
  std::string out = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(
      out,
      "{SELECT ?H (COUNT(?id) AS ?id_COUNT) WHERE{?H :id ?id.} GROUP BY ?H}"))
      << out;
  EXPECT_TRUE(contains_tokens(out, "SELECT ?id_COUNT WHERE")) << out;
}

TEST(NamingTest, UnaliasedUsesAreSuffixed) {
  DocBuilder b;
  b.main("a", "HospitalEpisode").field("abc");
  b.add("b", "TreatmentInWard").field("abc");
  b.link("a", "b", "treatmentInWard");
  std::string out = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(out, "SELECT ?abc ?abc_1 WHERE")) << out;
}

TEST(NamingTest, RepeatedExplicitAliasIsShared) {
  DocBuilder b;
  b.main("a", "HospitalEpisode").field("abc", "X");
  b.add("b", "TreatmentInWard").field("abc", "X");
  b.link("a", "b", "treatmentInWard");
  std::string out = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(out, "SELECT ?X WHERE")) << out;
  EXPECT_EQ(out.find("?X_1"), std::string::npos) << out;
}

TEST(NamingTest, ExplicitAliasWinsOverAutoName) {
  DocBuilder b;
  b.main("a", "HospitalEpisode").field("id").field("totalCost", "id");
  Compilation c = test::run(b.doc());
  // Both definitions are visible under the same name.
  EXPECT_TRUE(c.diagnostics.has_errors() ||
              contains_tokens(c.sparql, "?id_1"))
      << c.sparql;
}

TEST(NamingTest, ClassNameNamesInstance) {
  DocBuilder b;
  b.main("a", "HospitalEpisode").field("id");
  b.add("b", "HospitalEpisode").field("id");
  b.link("a", "b", "subWard");
  std::string out = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(out, "?HospitalEpisode :subWard ?HospitalEpisode_1"))
      << out;
}

class SpellingTest : public ::testing::TestWithParam<test::SpellingPair> {};

TEST_P(SpellingTest, SameTokens) {
  auto compile_cond = [](const char* text) {
    DocBuilder b;
    b.main("h", "HospitalEpisode").alias("H").field("id").condition(text);
    return test::compile_text(b.doc());
  };
  std::string a = compile_cond(GetParam().shorthand);
  std::string b = compile_cond(GetParam().longhand);
  EXPECT_TRUE(tokens_equal(a, b)) << a << "\n---\n" << b;
}

INSTANTIATE_TEST_SUITE_P(
    Pairs, SpellingTest, ::testing::ValuesIn(test::kSpellingPairs),
    [](const ::testing::TestParamInfo<test::SpellingPair>& info) {
      return std::string(info.param.name);
    });

std::string gender_query(StringLiteralConversion c) {
  DocBuilder b;
  b.main("p", "Patient").field("id").condition("gender = \"male\"");
  Params p;
  p.string_literal_conversion = c;
  return test::compile_text(b.doc(), p);
}

TEST(ParamsGenerationTest, StringLiteralConversion) {
  std::string simple = gender_query(StringLiteralConversion::kSimple);
  EXPECT_TRUE(contains_tokens(simple, "FILTER(STR(?gender) = \"male\")"))
      << simple;
  std::string typed = gender_query(StringLiteralConversion::kTyped);
  EXPECT_TRUE(
      contains_tokens(typed, "FILTER(?gender = \"male\"^^xsd:string)"))
      << typed;
  EXPECT_TRUE(contains_tokens(
      typed, "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>"))
      << typed;
  std::string off = gender_query(StringLiteralConversion::kOff);
  EXPECT_TRUE(contains_tokens(off, "FILTER(?gender = \"male\")")) << off;
}

TEST(ParamsGenerationTest, VirtuosoDateDifference) {
  DocBuilder b;
  b.main("h", "HospitalEpisode")
      .field("id")
      .condition("days(dischargeDate - admissionDate) > 3");
  Params general;
  EXPECT_TRUE(test::run(b.doc(), general).diagnostics.has_errors());
  Params virtuoso;
  virtuoso.query_engine_type = QueryEngine::kVirtuoso;
  std::string out = test::compile_text(b.doc(), virtuoso);
  EXPECT_TRUE(contains_tokens(out, "bif:datediff(\"day\"")) << out;
}

TEST(ParamsGenerationTest, GroupConcatSeparator) {
  DocBuilder b;
  b.main("h", "HospitalEpisode").alias("H");
  b.add("t", "TreatmentInWard").aggregate("group_concat(id)", "ids");
  b.link("h", "t", "treatmentInWard", LinkKind::kSubquery);
  b.node("h").field("ids");
  std::string out = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(out, "GROUP_CONCAT(?id; SEPARATOR=\", \")"))
      << out;
  Params p;
  p.grouping_separator = "|";
  out = test::compile_text(b.doc(), p);
  EXPECT_TRUE(contains_tokens(out, "SEPARATOR=\"|\"")) << out;
}

TEST(ParamsGenerationTest, ClassMembershipRoles) {
  DocBuilder b;
  b.main("p", "Patient").field("id");
  Params p;
  p.direct_class_membership_role = "<http://example.org/type>";
  EXPECT_TRUE(contains_tokens(test::compile_text(b.doc(), p),
                              "?Patient <http://example.org/type> :Patient"));
  b.node("p").rec().indirect_membership = true;
  std::string out = test::compile_text(b.doc());
  EXPECT_TRUE(contains_tokens(out, "?Patient a/rdfs:subClassOf* :Patient"))
      << out;
}

}  // namespace
}  // namespace vqc
