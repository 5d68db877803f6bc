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

// vqc: compile, validate, explain and run visual query documents.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vqc/compiler.h"
#include "vqc/endpoint_client.h"

namespace {

constexpr int kOk = 0;
constexpr int kCompileError = 1;
constexpr int kIoError = 2;

struct Inputs {
  std::string query;
  std::string schema;
  std::string params;
};

struct Loaded {
  vqc::QueryDocument query;
  vqc::Schema schema;
  vqc::Params params;
};

Loaded load(const Inputs& in) {
  Loaded l;
  l.query = vqc::load_query_document(in.query);
  l.schema = vqc::Schema::load_file(in.schema);
  if (!in.params.empty()) l.params = vqc::load_params(in.params);
  return l;
}

void print_diagnostics(const vqc::Diagnostics& diags) {
  for (const vqc::Diagnostic& d : diags) std::cerr << d << "\n";
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kIoError;
  }
  return kOk;
}

void add_inputs(CLI::App* cmd, Inputs& in) {
  cmd->add_option("query", in.query, "Query document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--schema", in.schema, "Schema file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--params", in.params, "Parameters file (JSON)")
      ->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile visual query documents to SPARQL"};
  app.require_subcommand(1);

  Inputs in;
  std::string output;
  std::string stage;
  std::string endpoint;
  std::string format = "table";
  std::string method = "post-direct";
  std::string user;
  std::string password;
  int timeout = 30;

  CLI::App* compile = app.add_subcommand("compile", "Write SPARQL text");
  add_inputs(compile, in);
  compile->add_option("-o,--output", output, "Output file (default stdout)");

  CLI::App* validate = app.add_subcommand("validate", "Report diagnostics");
  add_inputs(validate, in);

  CLI::App* explain = app.add_subcommand("explain", "Dump a compiler stage");
  add_inputs(explain, in);
  explain->add_option("--stage", stage, "parse, ast, symbols or model")
      ->required()
      ->check(CLI::IsMember({"parse", "ast", "symbols", "model"}));

  CLI::App* run = app.add_subcommand("run", "Compile and execute a query");
  add_inputs(run, in);
  run->add_option("--endpoint", endpoint,
                  "SPARQL endpoint URL (default $VQC_ENDPOINT)");
  run->add_option("--format", format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  run->add_option("--method", method, "get, post-form or post-direct")
      ->check(CLI::IsMember({"get", "post-form", "post-direct"}));
  run->add_option("--timeout", timeout, "Timeout in seconds")
      ->check(CLI::PositiveNumber);
  run->add_option("--user", user, "Basic authentication user");
  run->add_option("--password", password, "Basic authentication password");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kIoError;
  }

  try {
    Loaded l = load(in);
    if (*validate) {
      vqc::Compilation c = vqc::run_pipeline(l.query, l.schema, l.params);
      print_diagnostics(c.diagnostics);
      return c.ok() ? kOk : kCompileError;
    }
    if (*explain) {
      return write_output(
          vqc::explain(l.query, l.schema, l.params,
                       vqc::parse_explain_stage(stage)),
          "");
    }
    vqc::Diagnostics warnings;
    std::string sparql = vqc::compile(l.query, l.schema, l.params, &warnings);
    print_diagnostics(warnings);
    if (*compile) return write_output(sparql, output);

    if (endpoint.empty()) {
      if (const char* env = std::getenv("VQC_ENDPOINT")) endpoint = env;
    }
    if (endpoint.empty()) {
      std::cerr << "error: run needs --endpoint or VQC_ENDPOINT\n";
      return kIoError;
    }
    vqc::EndpointConfig cfg;
    cfg.endpoint_url = endpoint;
    cfg.timeout_seconds = timeout;
    cfg.http_method = method == "get"         ? vqc::HttpMethod::kGet
                      : method == "post-form" ? vqc::HttpMethod::kPostForm
                                              : vqc::HttpMethod::kPostDirect;
    if (!user.empty()) cfg.auth = vqc::BasicAuth{user, password};
    vqc::ResultTable t = vqc::execute_query(sparql, cfg);
    std::cout << vqc::format_results(t, vqc::parse_result_format(format));
    return kOk;
  } catch (const vqc::CompileError& e) {
    print_diagnostics(e.diagnostics());
    return kCompileError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}
