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

#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>
#include <vector>

#include "vqc/compiler.h"
#include "vqc/corpus.h"
#include "vqc/expr.h"
#include "vqc/schema.h"
#include "vqc/sparql_tokens.h"

namespace {

const vqc::Schema& schema() {
  static const vqc::Schema s = vqc::Schema::load_file(
      std::filesystem::path(VQC_TEST_DATA_DIR) / "mini-hospital.json");
  return s;
}

const std::vector<vqc::CorpusCase>& compilable_cases() {
  static const std::vector<vqc::CorpusCase> cases = [] {
    std::vector<vqc::CorpusCase> out;
    for (auto& c : vqc::load_corpus(VQC_CORPUS_DIR)) {
      if (c.expected_errors.empty()) out.push_back(std::move(c));
    }
    return out;
  }();
  return cases;
}

void BM_CompileGolden(benchmark::State& state) {
  vqc::CorpusCase c = vqc::load_corpus_case(
      std::filesystem::path(VQC_CORPUS_DIR) / "01-episode-treatment-count");
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqc::compile(c.query, schema(), c.params));
  }
}
BENCHMARK(BM_CompileGolden);

void BM_CompileCorpus(benchmark::State& state) {
  const auto& cases = compilable_cases();
  for (auto _ : state) {
    for (const auto& c : cases) {
      benchmark::DoNotOptimize(vqc::compile(c.query, schema(), c.params));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(cases.size()));
}
BENCHMARK(BM_CompileCorpus);

void BM_ParseExpression(benchmark::State& state) {
  const std::vector<std::string> texts = {
      "lengthInDays >= 10",
      "days(dischargeDate - admissionDate) > 3 && title ~* \"heart\"",
      "INV(patient).lengthInDays BETWEEN (5, 15) || caseRecordNo IN (1, 2, 3)",
      "count(distinct treatmentInWard/ward)",
  };
  for (auto _ : state) {
    for (const auto& t : texts) {
      benchmark::DoNotOptimize(
          vqc::parse_expression(t, vqc::ExprPosition::kCondition));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(texts.size()));
}
BENCHMARK(BM_ParseExpression);

void BM_TokenizeOutput(benchmark::State& state) {
  vqc::CorpusCase c = vqc::load_corpus_case(
      std::filesystem::path(VQC_CORPUS_DIR) / "01-episode-treatment-count");
  std::string text = vqc::compile(c.query, schema(), c.params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vqc::tokenize_sparql(text));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_TokenizeOutput);

}  // namespace

BENCHMARK_MAIN();
