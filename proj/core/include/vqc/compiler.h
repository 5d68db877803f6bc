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

// End-to-end compilation of a query document into SPARQL text.

#ifndef VQC_COMPILER_H_
#define VQC_COMPILER_H_

#include <optional>
#include <string>
#include <string_view>

#include "vqc/ast.h"
#include "vqc/diagnostics.h"
#include "vqc/gen_model.h"
#include "vqc/params.h"
#include "vqc/query_document.h"
#include "vqc/schema.h"
#include "vqc/symbol_table.h"
#include "vqc/variables.h"

namespace vqc {

// Intermediate results of one compilation. Stages after the first one
// that reports an error are left unset.
struct Compilation {
  Diagnostics diagnostics;
  std::optional<CompletedAst> completed;
  std::optional<VariableMap> variables;
  std::optional<GenModel> model;
  std::string sparql;

  bool ok() const { return !diagnostics.has_errors() && model.has_value(); }
};

Compilation run_pipeline(const QueryDocument& q, const Schema& schema,
                         const Params& params);

// Returns the SPARQL text; warnings are appended to `warnings` when given.
// Throws CompileError carrying all diagnostics if any error is reported.
std::string compile(const QueryDocument& q, const Schema& schema,
                    const Params& params, Diagnostics* warnings = nullptr);

enum class ExplainStage { kParse, kAst, kSymbols, kModel };

// Throws std::invalid_argument for unknown names.
ExplainStage parse_explain_stage(std::string_view name);

// Dump of one intermediate stage. Throws CompileError if the stage cannot
// be reached.
std::string explain(const QueryDocument& q, const Schema& schema,
                    const Params& params, ExplainStage stage);

}  // namespace vqc

#endif  // VQC_COMPILER_H_
