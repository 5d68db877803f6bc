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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracle.h"
#include "scoping_matrix.h"
#include "spelling_pairs.h"
#include "test_support.h"
#include "vqc/compiler.h"
#include "vqc/corpus.h"
#include "vqc/sparql_tokens.h"

namespace vqc::test {
namespace {

using nlohmann::json;

// Collects failure notes for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) notes_.push_back(what);
  }
  void tokens(const std::string& text, const std::string& fragment) {
    expect(contains_tokens(text, fragment), "missing `" + fragment + "`");
  }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> notes_;
};

CorpusCase golden_case() {
  return load_corpus_case(corpus_dir() / "01-episode-treatment-count");
}

void golden_translation(Check& c) {
  CorpusCase g = golden_case();
  const Schema& schema = hospital_schema();
  auto start = std::chrono::steady_clock::now();
  std::string out = compile(g.query, schema, g.params);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  c.expect(g.expected_sparql.has_value(), "no expected.rq");
  if (g.expected_sparql) {
    c.expect(tokens_equal(out, *g.expected_sparql),
             "token stream differs from expected.rq");
  }
  c.tokens(out, "SELECT ?caseRecordNo ?T_count");
  c.tokens(out, "{SELECT ?H (COUNT(?TreatmentInWard) AS ?T_count)");
  c.tokens(out, "GROUP BY ?H}");
  c.tokens(out, "OPTIONAL{?H :caseRecordNo ?caseRecordNo.}");
  c.tokens(out, "FILTER(?T_count >= 4)");
  c.tokens(out, "ORDER BY DESC(?T_count)");
  c.expect(ms < 50.0, "took " + std::to_string(ms) + " ms");
}

void micro_goldens(Check& c) {
  {
    DocBuilder b;
    b.main("n", "HospitalEpisode").alias("n").field("totalCost - 3", "t");
    std::string out = compile_text(b.doc());
    c.tokens(out, "?n :totalCost ?totalCost");
    c.tokens(out, "BIND(?totalCost - 3 AS ?t)");
  }
  {
    DocBuilder b;
    b.main("h", "HospitalEpisode").alias("H").condition("id = 12345");
    c.tokens(compile_text(b.doc()), "?H :id 12345");
  }
  {
    DocBuilder b;
    b.main("h", "HospitalEpisode").alias("H").condition("lengthInDays >= 10");
    std::string multi = compile(
        b.doc(), hospital_with_cardinality("lengthInDays", -1), Params{});
    c.tokens(multi,
             "FILTER EXISTS{?H :lengthInDays ?lengthInDays. "
             "FILTER(?lengthInDays >= 10)}");
    std::string single = compile_text(b.doc());
    c.tokens(single, "?H :lengthInDays ?lengthInDays.");
    c.tokens(single, "FILTER(?lengthInDays >= 10)");
    c.expect(single.find("EXISTS") == std::string::npos,
             "single-valued case uses EXISTS");
  }
  {
    DocBuilder b;
    b.main("h", "HospitalEpisode").alias("H").field("count(id)");
    c.tokens(compile_text(b.doc()),
             "{SELECT ?H (COUNT(?id) AS ?id_COUNT) WHERE{?H :id ?id.} "
             "GROUP BY ?H}");
  }
}

void variable_naming(Check& c) {
  {
    DocBuilder b;
    b.main("a", "HospitalEpisode").field("abc");
    b.add("b", "TreatmentInWard").field("abc");
    b.link("a", "b", "treatmentInWard");
    c.tokens(compile_text(b.doc()), "SELECT ?abc ?abc_1 WHERE");
  }
  {
    DocBuilder b;
    b.main("a", "HospitalEpisode").field("abc", "X");
    b.add("b", "TreatmentInWard").field("abc", "X");
    b.link("a", "b", "treatmentInWard");
    std::string out = compile_text(b.doc());
    c.tokens(out, "SELECT ?X WHERE");
    c.expect(out.find("?X_1") == std::string::npos, "alias X was split");
  }
}

void symbol_table(Check& c) {
  CorpusCase g = golden_case();
  json st = json::parse(
      explain(g.query, hospital_schema(), g.params, ExplainStage::kSymbols));
  const json& h = st["episode"]["H"].at(0);
  c.expect(h["kind"] == "CLASS_ALIAS", "H is not CLASS_ALIAS");
  const json& down = st["treatment"]["H"].at(0);
  c.expect(down["kind"] == "CLASS_ALIAS" && down["downBySubquery"] == true,
           "H lacks downBySubquery at the subquery node");
  const json& t = st["episode"]["T_count"].at(0);
  c.expect(t["kind"] == "AGGREGATE_ALIAS", "T_count is not AGGREGATE_ALIAS");
  c.expect(t["upBySubQuery"] == 1, "T_count upBySubQuery != 1");
  c.expect(t["distanceFromClass"] == 1, "T_count distanceFromClass != 1");
  const json& n = st["episode"]["caseRecordNo"].at(0);
  c.expect(n["kind"] == "PROPERTY_NAME", "caseRecordNo is not PROPERTY_NAME");
  c.expect(n["type"]["data_type"] == "xsd:integer",
           "caseRecordNo data_type is not xsd:integer");
}

void scoping_matrix(Check& c) {
  std::vector<ScopingCase> cases = scoping_cases();
  c.expect(cases.size() == 24, "expected 24 cells");
  for (const ScopingCase& s : cases) {
    std::string why = check_scoping_case(s);
    c.expect(why.empty(), std::string(row_name(s.row)) + "/" +
                              transition_name(s.transition) + ": " + why);
  }
}

void desugaring(Check& c) {
  auto compile_cond = [](const char* text) {
    DocBuilder b;
    b.main("h", "HospitalEpisode").alias("H").field("id").condition(text);
    return compile_text(b.doc());
  };
  for (const SpellingPair& p : kSpellingPairs) {
    c.expect(tokens_equal(compile_cond(p.shorthand), compile_cond(p.longhand)),
             std::string(p.name) + " spellings differ");
  }
}

void parameters(Check& c) {
  auto gender = [](StringLiteralConversion conv) {
    DocBuilder b;
    b.main("p", "Patient").field("id").condition("gender = \"male\"");
    Params p;
    p.string_literal_conversion = conv;
    return compile_text(b.doc(), p);
  };
  c.tokens(gender(StringLiteralConversion::kSimple),
           "FILTER(STR(?gender) = \"male\")");
  c.tokens(gender(StringLiteralConversion::kTyped),
           "FILTER(?gender = \"male\"^^xsd:string)");
  c.tokens(gender(StringLiteralConversion::kOff), "FILTER(?gender = \"male\")");
  {
    DocBuilder b;
    b.main("h", "HospitalEpisode")
        .field("id")
        .condition("days(dischargeDate - admissionDate) > 3");
    Params v;
    v.query_engine_type = QueryEngine::kVirtuoso;
    c.tokens(compile_text(b.doc(), v), "bif:datediff(\"day\"");
  }
  {
    DocBuilder b;
    b.main("h", "HospitalEpisode").alias("H").field("ids");
    b.add("t", "TreatmentInWard").aggregate("group_concat(id)", "ids");
    b.link("h", "t", "treatmentInWard", LinkKind::kSubquery);
    c.tokens(compile_text(b.doc()), "GROUP_CONCAT(?id; SEPARATOR=\", \")");
  }
}

struct CorpusRun {
  std::vector<CorpusCase> cases;
  CorpusReport report;
  double seconds = 0;
};

const CorpusRun& corpus_run() {
  static const CorpusRun run = [] {
    CorpusRun r;
    auto start = std::chrono::steady_clock::now();
    r.cases = load_corpus(corpus_dir());
    r.report = run_corpus_with_oracle(r.cases);
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return r;
  }();
  return run;
}

void well_formedness(Check& c) {
  const CorpusRun& run = corpus_run();
  std::size_t compiled = 0;
  for (const CaseReport& r : run.report.cases) {
    if (!r.sparql.empty()) ++compiled;
    for (const std::string& f : r.failures) {
      if (f.rfind("rows:", 0) != 0) c.expect(false, r.id + ": " + f);
    }
  }
  c.expect(compiled >= 30, "only " + std::to_string(compiled) +
                               " corpus queries were generated");
  c.expect(run.seconds < 60.0,
           "corpus took " + std::to_string(run.seconds) + " s");
}

void semantic_oracle(Check& c) {
  const CorpusRun& run = corpus_run();
  std::size_t matched = 0;
  for (const CaseReport& r : run.report.cases) {
    if (!r.rows_checked) continue;
    bool rows_ok = true;
    for (const std::string& f : r.failures) {
      if (f.rfind("rows:", 0) == 0) {
        rows_ok = false;
        c.expect(false, r.id + ": " + f);
      }
    }
    if (rows_ok) ++matched;
  }
  c.expect(matched >= 10,
           "only " + std::to_string(matched) + " cases matched their rows");
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace vqc::test

int main() {
  using namespace vqc::test;
  const std::vector<Criterion> criteria = {
      {1, "golden translation", golden_translation},
      {2, "micro-goldens", micro_goldens},
      {3, "variable naming", variable_naming},
      {4, "symbol table", symbol_table},
      {5, "scoping matrix", scoping_matrix},
      {6, "desugaring equivalence", desugaring},
      {7, "parameter behavior", parameters},
      {8, "well-formedness", well_formedness},
      {9, "semantic oracle", semantic_oracle},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    bool ok = check.notes().empty();
    if (!ok) ++failed;
    std::printf("criterion %d %s: %s\n", cr.number, cr.title,
                ok ? "PASS" : "FAIL");
    for (const std::string& n : check.notes()) {
      std::printf("    %s\n", n.c_str());
    }
  }
  return failed;
}
