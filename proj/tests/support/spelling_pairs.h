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

// Shorthand and long spellings of the same condition; each pair must
// compile to the same SPARQL.

#ifndef VQC_TESTS_SPELLING_PAIRS_H_
#define VQC_TESTS_SPELLING_PAIRS_H_

#include <array>

namespace vqc::test {

struct SpellingPair {
  const char* name;
  const char* shorthand;
  const char* longhand;
};

inline constexpr std::array<SpellingPair, 8> kSpellingPairs = {{
    {"regex", "title ~ \"ab\"", "REGEX(title, \"ab\")"},
    {"regex_i", "title ~* \"ab\"", "REGEX(title, \"ab\", \"i\")"},
    {"like", "title LIKE \"a%b\"", "REGEX(title, \"^a.*b$\")"},
    {"between", "totalCost BETWEEN (1, 5)", "totalCost >= 1 && totalCost <= 5"},
    {"substr", "title[2] = \"ab\"", "SUBSTR(title, 1, 2) = \"ab\""},
    {"inverse", "INV(treatmentInWard).id > 1", "^treatmentInWard.id > 1"},
    {"path", "patient.name = \"x\"", "patient/name = \"x\""},
    {"lang", "title@en = \"x\"", "title = \"x\" && LANG(title) = \"en\""},
}};

}  // namespace vqc::test

#endif  // VQC_TESTS_SPELLING_PAIRS_H_
