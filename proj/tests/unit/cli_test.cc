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

#ifdef VQC_CLI

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_support.h"
#include "vqc/sparql_tokens.h"

namespace vqc {
namespace {

struct Result {
  int status = -1;
  std::string output;
};

// Runs the CLI with stderr folded into the captured output.
Result vqc_cli(const std::string& args) {
  std::string cmd = std::string("\"") + VQC_CLI + "\" " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.output.append(buf, n);
  int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string quoted_path(const std::filesystem::path& p) {
  return "\"" + p.string() + "\"";
}

std::string corpus_query(const char* name) {
  return quoted_path(std::filesystem::path(VQC_CORPUS_DIR) / name /
                     "query.json");
}

std::string schema_arg() {
  return "--schema " + quoted_path(test::data_dir() / "mini-hospital.json");
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliTest, CompilesGoldenCase) {
  Result r = vqc_cli("compile " + schema_arg() + " " +
                     corpus_query("01-episode-treatment-count"));
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_TRUE(tokens_equal(r.output, test::kEpisodeCountSparql)) << r.output;
}

TEST(CliTest, WritesOutputFile) {
  auto out = std::filesystem::temp_directory_path() / "vqc-cli-test.rq";
  std::filesystem::remove(out);
  Result r = vqc_cli("compile " + schema_arg() + " -o " + quoted_path(out) +
                     " " + corpus_query("03-constant-condition"));
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_TRUE(contains_tokens(read(out), "?H :caseRecordNo 101 ."));
  std::filesystem::remove(out);
}

TEST(CliTest, ValidateReportsErrorsWithStatusOne) {
  Result r = vqc_cli("validate " + schema_arg() + " " +
                     corpus_query("39-error-cycle"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("error[structure]"), std::string::npos) << r.output;

  r = vqc_cli("compile " + schema_arg() + " " +
              corpus_query("40-error-scoping"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("error[scoping]"), std::string::npos) << r.output;
}

TEST(CliTest, InputProblemsExitWithStatusTwo) {
  EXPECT_EQ(vqc_cli("compile --schema /nonexistent/schema.json " +
                    corpus_query("03-constant-condition"))
                .status,
            2);
  EXPECT_EQ(vqc_cli("compile " + schema_arg() + " /nonexistent/q.json").status,
            2);
  EXPECT_EQ(vqc_cli("run --endpoint http://127.0.0.1:1/sparql --timeout 2 " +
                    schema_arg() + " " + corpus_query("03-constant-condition"))
                .status,
            2);
}

TEST(CliTest, ExplainSymbolsIsJson) {
  Result r = vqc_cli("explain --stage symbols " + schema_arg() + " " +
                     corpus_query("01-episode-treatment-count"));
  ASSERT_EQ(r.status, 0) << r.output;
  auto st = nlohmann::json::parse(r.output);
  EXPECT_EQ(st["episode"]["T_count"][0]["kind"], "AGGREGATE_ALIAS");
}

TEST(CliTest, ParamsFileChangesOutput) {
  auto params = std::filesystem::temp_directory_path() / "vqc-cli-params.json";
  std::ofstream(params) << R"({"stringLiteralConversion": "TYPED"})";
  Result r = vqc_cli("compile " + schema_arg() + " --params " +
                     quoted_path(params) + " " +
                     corpus_query("09-string-simple"));
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_TRUE(contains_tokens(r.output, "\"male\"^^xsd:string")) << r.output;
  std::filesystem::remove(params);
}

}  // namespace
}  // namespace vqc

#endif  // VQC_CLI
