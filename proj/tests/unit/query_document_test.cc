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
#include "vqc/query_document.h"

namespace vqc {
namespace {

using test::DocBuilder;

QueryDocument two_nodes() {
  DocBuilder b;
  b.main("n1", "HospitalEpisode").field("caseRecordNo");
  b.add("n2", "Patient").field("name");
  b.link("n1", "n2", "patient");
  return b.doc();
}

TEST(QueryDocumentTest, ParsesMinimalDocument) {
  QueryDocument q = parse_query_document(R"({
    "formatVersion": 1,
    "nodes": [{"id": "a", "main": true, "className": "Patient",
               "fields": [{"expr": "name"}, {"expr": "gender", "order": -1}]}],
    "links": []})");
  ASSERT_EQ(q.nodes.size(), 1u);
  const NodeRecord* main = q.main_node();
  ASSERT_NE(main, nullptr);
  EXPECT_EQ(main->class_name, "Patient");
  ASSERT_EQ(main->fields.size(), 2u);
  // Compartments are sorted by their order key.
  EXPECT_EQ(main->fields[0].expr, "gender");
  EXPECT_EQ(main->fields[1].id, "a/field/0");
}

TEST(QueryDocumentTest, RejectsBadInput) {
  EXPECT_THROW(parse_query_document("[1"), FormatError);
  EXPECT_THROW(parse_query_document(R"({"formatVersion": 2})"), FormatError);
  EXPECT_THROW(parse_query_document(
                   R"({"nodes": [{"id": "a", "main": true, "colour": 1}]})"),
               FormatError);
  EXPECT_THROW(parse_query_document(R"({"nodes": [
        {"id": "a", "main": true}, {"id": "a"}]})"),
               FormatError);
  EXPECT_THROW(parse_query_document(R"({"nodes": [
        {"id": "a", "main": true}, {"id": "b", "main": true}]})"),
               FormatError);
  EXPECT_THROW(parse_query_document(R"({"nodes": [{"id": "a", "main": true}],
        "links": [{"source": "a", "target": "a", "mode": "sometimes"}]})"),
               FormatError);
}

TEST(QueryDocumentTest, SerializeRoundTrip) {
  QueryDocument q = two_nodes();
  q.links[0].mode = LinkMode::kOptional;
  q.nodes[1].limit = 3;
  EXPECT_EQ(parse_query_document(serialize_query_document(q)), q);
}

TEST(QueryDocumentTest, ValidTreePasses) {
  Diagnostics d = validate_document(two_nodes(), test::hospital_schema());
  EXPECT_FALSE(d.has_errors());
}

TEST(QueryDocumentTest, CycleIsNotATree) {
  QueryDocument q = two_nodes();
  LinkRecord back = q.links[0];
  back.id = "back";
  back.source = "n2";
  back.target = "n1";
  q.links.push_back(back);
  Diagnostics d = validate_document(q, test::hospital_schema());
  ASSERT_TRUE(d.has_errors());
  EXPECT_EQ(d.items()[0].message, "structure is not a tree");
}

TEST(QueryDocumentTest, DisconnectedNodeIsNotATree) {
  QueryDocument q = two_nodes();
  q.links.clear();
  EXPECT_TRUE(
      validate_document(q, test::hospital_schema()).contains("structure"));
}

TEST(QueryDocumentTest, LimitOnlyOnMainOrGlobalSubquery) {
  QueryDocument q = two_nodes();
  q.nodes[1].limit = 5;
  EXPECT_TRUE(
      validate_document(q, test::hospital_schema()).contains("subquery"));
  q.links[0].kind = LinkKind::kSubquery;
  q.links[0].global = true;
  EXPECT_FALSE(validate_document(q, test::hospital_schema()).has_errors());
}

TEST(QueryDocumentTest, AggregationNeedsBlockRoot) {
  QueryDocument q = two_nodes();
  q.nodes[1].aggregations.push_back({"agg", "count(.)", {}, 0});
  EXPECT_TRUE(
      validate_document(q, test::hospital_schema()).contains("aggregation"));
  q.links[0].kind = LinkKind::kSubquery;
  EXPECT_FALSE(validate_document(q, test::hospital_schema()).has_errors());
}

TEST(QueryDocumentTest, ReferenceLinkMustPointOutward) {
  DocBuilder b;
  b.main("n1", "HospitalEpisode");
  b.add("n2", "TreatmentInWard");
  b.add("n3", "Ward");
  b.link("n1", "n2", "treatmentInWard", LinkKind::kSubquery);
  b.link("n1", "n3", "subWard");
  b.link("n2", "n3", "ward", LinkKind::kReference);
  EXPECT_FALSE(validate_document(b.doc(), test::hospital_schema())
                   .has_errors());
  QueryDocument q = b.doc();
  std::swap(q.links[2].source, q.links[2].target);
  EXPECT_TRUE(validate_document(q, test::hospital_schema()).contains("link"));
}

TEST(QueryDocumentTest, ExpressionSyntaxErrorsAreReported) {
  QueryDocument q = two_nodes();
  q.nodes[0].conditions.push_back({"bad", "id > > 3", {}, 0});
  Diagnostics d = validate_document(q, test::hospital_schema());
  ASSERT_TRUE(d.contains("syntax"));
  EXPECT_EQ(d.items().back().element, "bad");
}

TEST(QueryDocumentTest, EmptyPathNeedsControlNode) {
  QueryDocument q = two_nodes();
  q.links[0].path.clear();
  EXPECT_TRUE(validate_document(q, test::hospital_schema()).contains("link"));
  q.nodes[1].node_type = NodeType::kUnit;
  q.nodes[1].class_name.reset();
  q.nodes[1].fields.clear();
  EXPECT_FALSE(validate_document(q, test::hospital_schema()).contains("link"));
}

}  // namespace
}  // namespace vqc
