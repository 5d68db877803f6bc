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

// Lexical view of SPARQL text, used to collect the prefixes a query uses
// and to compare queries modulo whitespace.

#ifndef VQC_SPARQL_TOKENS_H_
#define VQC_SPARQL_TOKENS_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vqc {

enum class SparqlTokenKind {
  kIri,           // <...>
  kPrefixedName,  // prefix:local or prefix:
  kVariable,      // ?x or $x
  kString,
  kNumber,
  kLangTag,  // @en
  kWord,     // keywords, function names and 'a'
  kPunct,
};

struct SparqlToken {
  SparqlTokenKind kind = SparqlTokenKind::kPunct;
  std::string text;

  bool operator==(const SparqlToken&) const = default;
};

// Throws FormatError on unterminated strings. A "<" that does not close
// as an IRI is the less-than operator.
std::vector<SparqlToken> tokenize_sparql(std::string_view text);

// Token texts with keywords upper-cased ('a' kept) and '$' variables
// written with '?'.
std::vector<std::string> token_stream(std::string_view text);

bool tokens_equal(std::string_view a, std::string_view b);

// True if `needle` occurs as a contiguous token subsequence of `haystack`.
bool contains_tokens(std::string_view haystack, std::string_view needle);

// Prefixes of all prefixed names in the text ("" for the default one),
// ignoring PREFIX declarations themselves.
std::set<std::string> used_prefixes(std::string_view text);

}  // namespace vqc

#endif  // VQC_SPARQL_TOKENS_H_
