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

#include "vqc/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "json_util.h"
#include "vqc/compiler.h"
#include "vqc/sparql_tokens.h"

namespace vqc {
namespace {

using internal::Json;

// Numeric lexical forms compare by value ("297" vs "297.0").
std::string value_key(const Cell& c) {
  if (c.kind != ValueKind::kLiteral || c.value.empty()) return c.value;
  const char* begin = c.value.c_str();
  char* end = nullptr;
  double d = std::strtod(begin, &end);
  if (end != begin + c.value.size() || !std::isfinite(d)) return c.value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", d == 0 ? 0.0 : d);
  return buf;
}

std::vector<std::string> row_key(const ResultTable& t,
                                 const std::vector<std::optional<Cell>>& row,
                                 const std::vector<std::string>& vars) {
  std::vector<std::string> key;
  for (const std::string& v : vars) {
    auto it = std::find(t.variables.begin(), t.variables.end(), v);
    if (it == t.variables.end()) {
      key.push_back("<missing>");
      continue;
    }
    const auto& c = row[static_cast<std::size_t>(it - t.variables.begin())];
    if (!c) {
      key.push_back("");
      continue;
    }
    std::string k =
        std::to_string(static_cast<int>(c->kind)) + ":" + value_key(*c);
    if (c->lang) k += "@" + *c->lang;
    key.push_back(k);
  }
  return key;
}

std::string show(const std::vector<std::string>& key) {
  std::string out = "(";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ", ";
    out += key[i].empty() ? "-" : key[i].substr(key[i].find(':') + 1);
  }
  return out + ")";
}

}  // namespace

CorpusCase load_corpus_case(const std::filesystem::path& directory) {
  CorpusCase c;
  c.directory = directory;
  c.id = directory.filename().string();
  c.query = load_query_document(directory / "query.json");
  Json meta = internal::parse_json(internal::read_file(directory / "meta.json"),
                                   "meta.json");
  internal::expect_object(meta, "meta.json");
  c.id = meta.value("id", c.id);
  c.description = meta.value("description", "");
  c.schema_path = directory / meta.at("schema").get<std::string>();
  if (meta.contains("params")) c.params = parse_params(meta["params"].dump());
  c.tags = meta.value("tags", std::vector<std::string>{});
  c.reconstructed = meta.value("reconstructed", false);
  c.expected_fragments =
      meta.value("expectedFragments", std::vector<std::string>{});
  c.expected_errors = meta.value("expectedErrors", std::vector<std::string>{});
  if (meta.contains("fixture")) {
    c.fixture = directory / meta["fixture"].get<std::string>();
  }
  if (std::filesystem::exists(directory / "expected.rq")) {
    c.expected_sparql = internal::read_file(directory / "expected.rq");
  }
  if (std::filesystem::exists(directory / "expected.rows.json")) {
    c.expected_rows = decode_results_json(
        internal::read_file(directory / "expected.rows.json"));
  }
  if (!c.expected_sparql && c.expected_fragments.empty() &&
      c.expected_errors.empty() && !c.expected_rows) {
    throw FormatError("corpus case " + c.id + " has no expectation");
  }
  return c;
}

std::vector<CorpusCase> load_corpus(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory() &&
        std::filesystem::exists(entry.path() / "meta.json")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<CorpusCase> out;
  for (const auto& d : dirs) out.push_back(load_corpus_case(d));
  return out;
}

bool same_rows(const ResultTable& expected, const ResultTable& actual,
               bool ordered, std::string* difference) {
  auto fail = [&](std::string why) {
    if (difference != nullptr) *difference = std::move(why);
    return false;
  };
  std::vector<std::string> ev = expected.variables;
  std::vector<std::string> av = actual.variables;
  std::sort(ev.begin(), ev.end());
  std::sort(av.begin(), av.end());
  if (ev != av) return fail("variables differ");
  std::vector<std::vector<std::string>> e;
  std::vector<std::vector<std::string>> a;
  for (const auto& r : expected.rows) e.push_back(row_key(expected, r, ev));
  for (const auto& r : actual.rows) a.push_back(row_key(actual, r, ev));
  if (!ordered) {
    std::sort(e.begin(), e.end());
    std::sort(a.begin(), a.end());
  }
  if (e == a) return true;
  std::string why = "expected " + std::to_string(e.size()) + " rows, got " +
                    std::to_string(a.size());
  for (std::size_t i = 0; i < std::max(e.size(), a.size()); ++i) {
    if (i >= e.size() || i >= a.size() || e[i] != a[i]) {
      why += "; first difference at row " + std::to_string(i) + ": expected " +
             (i < e.size() ? show(e[i]) : "none") + ", got " +
             (i < a.size() ? show(a[i]) : "none");
      break;
    }
  }
  return fail(why);
}

std::size_t CorpusReport::failed() const {
  return static_cast<std::size_t>(std::count_if(
      cases.begin(), cases.end(),
      [](const CaseReport& c) { return !c.passed(); }));
}

CorpusReport run_corpus(const std::vector<CorpusCase>& cases,
                        const CorpusOptions& options) {
  CorpusReport report;
  std::map<std::filesystem::path, Schema> schemas;
  for (const CorpusCase& c : cases) {
    CaseReport r;
    r.id = c.id;
    try {
      auto it = schemas.find(c.schema_path);
      if (it == schemas.end()) {
        it = schemas.emplace(c.schema_path, Schema::load_file(c.schema_path))
                 .first;
      }
      Compilation comp = run_pipeline(c.query, it->second, c.params);
      if (!c.expected_errors.empty()) {
        for (const std::string& code : c.expected_errors) {
          if (!comp.diagnostics.contains(code)) {
            r.failures.push_back("missing expected error '" + code + "'");
          }
        }
        if (comp.ok()) r.failures.push_back("compilation unexpectedly succeeded");
        report.cases.push_back(std::move(r));
        continue;
      }
      if (!comp.ok()) {
        for (const Diagnostic& d : comp.diagnostics) {
          r.failures.push_back("diagnostic: " + to_string(d));
        }
        report.cases.push_back(std::move(r));
        continue;
      }
      r.sparql = comp.sparql;
      if (c.expected_sparql && !tokens_equal(*c.expected_sparql, r.sparql)) {
        r.failures.push_back("output differs from expected.rq");
      }
      for (const std::string& f : c.expected_fragments) {
        if (!contains_tokens(r.sparql, f)) {
          r.failures.push_back("missing fragment: " + f);
        }
      }
      if (options.syntax_check) {
        if (auto err = options.syntax_check(r.sparql)) {
          r.failures.push_back("syntax: " + *err);
        }
      }
      if (c.expected_rows && c.fixture && options.oracle) {
        ResultTable actual = options.oracle(c, r.sparql);
        bool ordered = contains_tokens(r.sparql, "ORDER BY");
        std::string why;
        if (!same_rows(*c.expected_rows, actual, ordered, &why)) {
          r.failures.push_back("rows: " + why);
        }
        r.rows_checked = true;
      }
    } catch (const std::exception& e) {
      r.failures.push_back(std::string("exception: ") + e.what());
    }
    report.cases.push_back(std::move(r));
  }
  return report;
}

}  // namespace vqc
