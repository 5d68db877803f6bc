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

#include "vqc/compiler.h"

#include "vqc/render.h"

namespace vqc {

Compilation run_pipeline(const QueryDocument& q, const Schema& schema,
                         const Params& params) {
  Compilation c;
  c.diagnostics = validate_document(q, schema);
  if (c.diagnostics.has_errors()) return c;
  try {
    Ast ast = build_initial_ast(q, schema);
    c.completed = complete_ast(ast, schema, params, c.diagnostics);
    if (c.diagnostics.has_errors()) return c;
    const CompletedAst& done = *c.completed;
    c.variables = assign_variables(done.ast, done.symbols, c.diagnostics);
    if (c.diagnostics.has_errors()) return c;
    GenModel model = build_generation_model(done.ast, done.symbols,
                                            *c.variables, params, schema,
                                            c.diagnostics);
    if (c.diagnostics.has_errors()) return c;
    c.sparql = render_sparql(model, schema, &c.diagnostics);
    c.model = std::move(model);
  } catch (const ResolutionError& e) {
    c.diagnostics.error("name", e.what());
  } catch (const LoadError& e) {
    c.diagnostics.error("structure", e.what());
  }
  return c;
}

std::string compile(const QueryDocument& q, const Schema& schema,
                    const Params& params, Diagnostics* warnings) {
  Compilation c = run_pipeline(q, schema, params);
  if (!c.ok()) throw CompileError(std::move(c.diagnostics));
  if (warnings != nullptr) warnings->append(c.diagnostics);
  return c.sparql;
}

}  // namespace vqc
