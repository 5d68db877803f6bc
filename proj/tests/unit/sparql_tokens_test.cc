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

#include "vqc/diagnostics.h"
#include "vqc/sparql_tokens.h"

namespace vqc {
namespace {

TEST(SparqlTokensTest, WhitespaceIsIrrelevant) {
  EXPECT_TRUE(tokens_equal("SELECT ?x WHERE{?x a :C.}",
                           "SELECT  ?x\nWHERE {\n  ?x a :C .\n}"));
  EXPECT_FALSE(tokens_equal("SELECT ?x WHERE{}", "SELECT ?y WHERE{}"));
}

TEST(SparqlTokensTest, KeywordsAndDollarVariablesNormalize) {
  EXPECT_TRUE(tokens_equal("select $x where{}", "SELECT ?x WHERE{}"));
  EXPECT_FALSE(tokens_equal("?x a :C", "?x A :C"));
}

TEST(SparqlTokensTest, StringsKeepInnerSpaces) {
  auto t = tokenize_sparql(R"(FILTER(?n = "a  b\"c"))");
  ASSERT_GE(t.size(), 5u);
  EXPECT_EQ(t[4].kind, SparqlTokenKind::kString);
  EXPECT_FALSE(tokens_equal(R"("a  b")", R"("a b")"));
}

TEST(SparqlTokensTest, TokenKinds) {
  auto t = tokenize_sparql("<http://x/y> :p xsd:int ?v 12.5 \"s\"@en ;");
  ASSERT_EQ(t.size(), 8u);
  EXPECT_EQ(t[0].kind, SparqlTokenKind::kIri);
  EXPECT_EQ(t[1].kind, SparqlTokenKind::kPrefixedName);
  EXPECT_EQ(t[2].kind, SparqlTokenKind::kPrefixedName);
  EXPECT_EQ(t[3].kind, SparqlTokenKind::kVariable);
  EXPECT_EQ(t[4].kind, SparqlTokenKind::kNumber);
  EXPECT_EQ(t[5].kind, SparqlTokenKind::kString);
  EXPECT_EQ(t[6].kind, SparqlTokenKind::kLangTag);
  EXPECT_EQ(t[7].kind, SparqlTokenKind::kPunct);
}

TEST(SparqlTokensTest, ContainsMatchesWholeTokens) {
  const char* q = "SELECT ?ab WHERE{?ab :p 101.}";
  EXPECT_TRUE(contains_tokens(q, "?ab :p 101 ."));
  EXPECT_FALSE(contains_tokens(q, "?a :p"));
  EXPECT_FALSE(contains_tokens(q, ":p 10"));
  EXPECT_TRUE(contains_tokens(q, ""));
}

TEST(SparqlTokensTest, UsedPrefixesIgnoreDeclarations) {
  auto used = used_prefixes(
      "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n"
      "PREFIX : <http://x/>\n"
      "SELECT ?x WHERE{?x a :C. ?x rdfs:label \"q:r\".}");
  EXPECT_EQ(used, (std::set<std::string>{"", "rdfs"}));
}

TEST(SparqlTokensTest, UnterminatedInputThrows) {
  EXPECT_THROW(tokenize_sparql("FILTER(?x = \"abc)"), FormatError);
}

TEST(SparqlTokensTest, UnclosedAngleIsLessThan) {
  auto t = tokenize_sparql("FILTER(?x <?y)");
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(t[3].text, "<");
  EXPECT_EQ(t[3].kind, SparqlTokenKind::kPunct);
  EXPECT_EQ(t[4].kind, SparqlTokenKind::kVariable);
}

}  // namespace
}  // namespace vqc
