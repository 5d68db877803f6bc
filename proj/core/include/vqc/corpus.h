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

// Conformance corpus: query documents with expected SPARQL, diagnostics
// and result rows over a fixture dataset.

#ifndef VQC_CORPUS_H_
#define VQC_CORPUS_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vqc/endpoint_client.h"
#include "vqc/params.h"
#include "vqc/query_document.h"
#include "vqc/schema.h"

namespace vqc {

struct CorpusCase {
  std::string id;
  std::filesystem::path directory;
  std::string description;
  QueryDocument query;
  std::filesystem::path schema_path;
  Params params;
  std::vector<std::string> tags;
  bool reconstructed = false;
  std::optional<std::string> expected_sparql;
  // Token sequences that must occur in the output.
  std::vector<std::string> expected_fragments;
  // Error codes the compilation must report (the case then has no output).
  std::vector<std::string> expected_errors;
  std::optional<ResultTable> expected_rows;
  std::optional<std::filesystem::path> fixture;
};

// Reads one case directory: query.json, meta.json and the optional
// expected.rq / expected.rows.json. Throws FormatError or IoError.
CorpusCase load_corpus_case(const std::filesystem::path& directory);
// All case directories below `root`, sorted by name.
std::vector<CorpusCase> load_corpus(const std::filesystem::path& root);

// Row sets are compared on value, kind and language; datatypes are
// ignored. `ordered` compares row order as well.
bool same_rows(const ResultTable& expected, const ResultTable& actual,
               bool ordered, std::string* difference = nullptr);

struct CorpusOptions {
  // Returns an error message for text that is not valid SPARQL.
  std::function<std::optional<std::string>(const std::string& sparql)>
      syntax_check;
  // Executes generated SPARQL over the case fixture.
  std::function<ResultTable(const CorpusCase& c, const std::string& sparql)>
      oracle;
};

struct CaseReport {
  std::string id;
  std::string sparql;
  std::vector<std::string> failures;
  bool rows_checked = false;

  bool passed() const { return failures.empty(); }
};

struct CorpusReport {
  std::vector<CaseReport> cases;

  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
};

CorpusReport run_corpus(const std::vector<CorpusCase>& cases,
                        const CorpusOptions& options);

}  // namespace vqc

#endif  // VQC_CORPUS_H_
