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

#include "json.hpp"
#include "scoping_matrix.h"
#include "test_support.h"
#include "vqc/ast.h"
#include "vqc/sparql_tokens.h"
#include "vqc/symbol_table.h"

namespace vqc {
namespace {

using nlohmann::json;
using test::DocBuilder;

class ScopingMatrixTest : public ::testing::TestWithParam<test::ScopingCase> {
};

TEST_P(ScopingMatrixTest, MatchesVisibilityRule) {
  EXPECT_EQ(test::check_scoping_case(GetParam()), "");
}

INSTANTIATE_TEST_SUITE_P(
    AllCells, ScopingMatrixTest, ::testing::ValuesIn(test::scoping_cases()),
    [](const ::testing::TestParamInfo<test::ScopingCase>& info) {
      return std::string(test::row_name(info.param.row)) + "_" +
             test::transition_name(info.param.transition);
    });

json symbols_of(const QueryDocument& q) {
  Params p;
  Diagnostics d;
  CompletedAst c =
      complete_ast(build_initial_ast(q, test::hospital_schema()),
                   test::hospital_schema(), p, d);
  EXPECT_FALSE(d.has_errors());
  return json::parse(dump_symbol_table(c.symbols));
}

TEST(SymbolTableTest, EpisodeCountTable) {
  json st = symbols_of(test::episode_count_document());

  const json& h = st["episode"]["H"].at(0);
  EXPECT_EQ(h["kind"], "CLASS_ALIAS");
  EXPECT_EQ(h["type"]["local_name"], "HospitalEpisode");
  EXPECT_EQ(h["type"]["is_local"], true);
  EXPECT_EQ(h["context"], "episode");

  const json& h_down = st["treatment"]["H"].at(0);
  EXPECT_EQ(h_down["kind"], "CLASS_ALIAS");
  EXPECT_EQ(h_down["downBySubquery"], true);
  EXPECT_EQ(h_down["context"], "episode");

  const json& t = st["episode"]["T_count"].at(0);
  EXPECT_EQ(t["kind"], "AGGREGATE_ALIAS");
  EXPECT_TRUE(t["type"].is_null());
  EXPECT_EQ(t["context"], "treatment");
  EXPECT_EQ(t["upBySubQuery"], 1);
  EXPECT_EQ(t["distanceFromClass"], 1);

  const json& c = st["episode"]["caseRecordNo"].at(0);
  EXPECT_EQ(c["kind"], "PROPERTY_NAME");
  EXPECT_EQ(c["type"]["data_type"], "xsd:integer");
  EXPECT_EQ(c["type"]["max_cardinality"], 1);
  EXPECT_EQ(c["type"]["iri"],
            "http://lumii.lv/ontologies/2016/mini-bkus-en#caseRecordNo");
}

TEST(SymbolTableTest, InitialTableUsesTemporaryKinds) {
  DocBuilder b;
  b.main("a", "Patient").alias("P").field("gender").field("name", "N");
  SymbolTable st = build_initial_symbol_table(
      build_initial_ast(b.doc(), test::hospital_schema()));
  const NameMap& names = st.visible_names("a");
  EXPECT_EQ(names.at("P").at(0).kind, NameKind::kClassAlias);
  EXPECT_EQ(names.at("gender").at(0).kind, NameKind::kUnresolvedName);
  EXPECT_EQ(names.at("N").at(0).kind, NameKind::kUnresolvedFieldAlias);
  EXPECT_THROW(st.visible_names("zz"), ResolutionError);
}

TEST(SymbolTableTest, FieldKindsAreClassified) {
  DocBuilder b;
  b.main("a", "HospitalEpisode")
      .field("totalCost", "C")
      .field("totalCost - 3", "t")
      .field("C", "R");
  json st = symbols_of(b.doc());
  EXPECT_EQ(st["a"]["C"][0]["kind"], "PROPERTY_ALIAS");
  EXPECT_EQ(st["a"]["t"][0]["kind"], "BIND_ALIAS");
  EXPECT_EQ(st["a"]["R"][0]["kind"], "REFERENCE_TO_ALIAS");
}

TEST(SymbolTableTest, OptionalNameCannotStartNavigation) {
  DocBuilder b;
  b.main("a", "HospitalEpisode");
  b.add("b", "Patient").alias("X");
  b.link("a", "b", "patient", LinkKind::kJoin, LinkMode::kOptional);
  b.node("a").condition("BOUND(X)");
  EXPECT_TRUE(test::run(b.doc()).ok());
  b.node("a").condition("X.gender = \"male\"");
  EXPECT_TRUE(test::run(b.doc()).diagnostics.contains("scoping"));
}

TEST(SymbolTableTest, OuterInstanceCannotBeAggregated) {
  DocBuilder b;
  b.main("a", "HospitalEpisode").alias("H");
  b.add("s", "TreatmentInWard").aggregate("count(H)", "n");
  b.link("a", "s", "treatmentInWard", LinkKind::kSubquery);
  EXPECT_TRUE(test::run(b.doc()).diagnostics.contains("scoping"));
}

TEST(SymbolTableTest, FieldMayNotUseLaterAlias) {
  DocBuilder b;
  b.main("a", "HospitalEpisode").field("C + 1", "D").field("totalCost", "C");
  EXPECT_TRUE(test::run(b.doc()).diagnostics.has_errors());
  DocBuilder ok;
  ok.main("a", "HospitalEpisode").field("totalCost", "C").field("C + 1", "D");
  EXPECT_TRUE(test::run(ok.doc()).ok());
}

TEST(SymbolTableTest, AliasCyclesAreReported) {
  DocBuilder b;
  b.main("a", "HospitalEpisode").condition("A > 1");
  b.add("b", "Patient").field("B", "A");
  b.add("c", "Ward").field("A", "B");
  b.link("a", "b", "patient");
  b.link("a", "c", "ward");
  EXPECT_TRUE(test::run(b.doc()).diagnostics.has_errors());
}

// An aggregate alias moves up one subquery level; a field referencing it
// re-exports it one level further.
TEST(SymbolTableTest, FieldReexportsAggregateAlias) {
  DocBuilder b;
  b.main("a", "HospitalEpisode").field("caseRecordNo").field("N2");
  b.add("b", "TreatmentInWard").field("N", "N2");
  b.add("c", "Manipulation").aggregate("count(.)", "N");
  b.link("a", "b", "treatmentInWard", LinkKind::kSubquery);
  b.link("b", "c", "manipulation", LinkKind::kSubquery);
  Compilation c = test::run(b.doc());
  ASSERT_TRUE(c.ok()) << c.sparql;
  EXPECT_TRUE(contains_tokens(c.sparql, "BIND(?N AS ?N2)")) << c.sparql;
  EXPECT_TRUE(contains_tokens(c.sparql, "SELECT ?caseRecordNo ?N2 WHERE"))
      << c.sparql;

  b.node("a").field("N");
  EXPECT_TRUE(test::run(b.doc()).diagnostics.contains("scoping"));
}

TEST(SymbolTableTest, ScopePathFlags) {
  QueryDocument q = test::episode_count_document();
  Ast ast = build_initial_ast(q, test::hospital_schema());
  auto down = scope_path(ast, 0, 1, NameCategory::kInstance, false);
  ASSERT_TRUE(down);
  EXPECT_TRUE(down->down_by_subquery);
  auto up = scope_path(ast, 1, 0, NameCategory::kAggregate, true);
  ASSERT_TRUE(up);
  EXPECT_EQ(up->up_by_subquery, 1);
  EXPECT_FALSE(scope_path(ast, 1, 0, NameCategory::kInstance, false));
}

}  // namespace
}  // namespace vqc
