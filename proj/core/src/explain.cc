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

#include <sstream>
#include <stdexcept>

#include "vqc/compiler.h"

namespace vqc {
namespace {

void explain_expression(std::ostringstream& os, const std::string& id,
                        const std::string& text, ExprPosition position) {
  os << id << ": " << text << "\n";
  try {
    Expr e = parse_expression(text, position);
    os << "  canonical: " << to_canonical(e) << "\n";
    std::istringstream tree(dump_tree(e));
    for (std::string line; std::getline(tree, line);) {
      os << "  " << line << "\n";
    }
  } catch (const ExprParseError& e) {
    os << "  error at offset " << e.offset() << ": " << e.what() << "\n";
  }
}

std::string explain_parse(const Ast& ast) {
  std::ostringstream os;
  for (std::size_t i : ast.preorder()) {
    const AstNode& n = ast.node(i);
    for (const AstField& f : n.fields) {
      explain_expression(os, f.id, f.expr, ExprPosition::kField);
    }
    for (const AstAggregation& a : n.aggregations) {
      explain_expression(os, a.id, a.expr, ExprPosition::kAggregation);
    }
    for (const AstCondition& c : n.conditions) {
      explain_expression(os, c.id, c.expr, ExprPosition::kCondition);
    }
    for (const AstGrouping& g : n.groupings) {
      explain_expression(os, g.id, g.expr, ExprPosition::kGroupBy);
    }
    for (const AstOrdering& o : n.orderings) {
      explain_expression(os, o.id, o.expr, ExprPosition::kOrderBy);
    }
  }
  return os.str();
}

}  // namespace

ExplainStage parse_explain_stage(std::string_view name) {
  if (name == "parse") return ExplainStage::kParse;
  if (name == "ast") return ExplainStage::kAst;
  if (name == "symbols") return ExplainStage::kSymbols;
  if (name == "model") return ExplainStage::kModel;
  throw std::invalid_argument("unknown stage '" + std::string(name) + "'");
}

std::string explain(const QueryDocument& q, const Schema& schema,
                    const Params& params, ExplainStage stage) {
  Diagnostics diags = validate_document(q, schema);
  if (diags.has_errors()) throw CompileError(std::move(diags));
  Ast ast;
  try {
    ast = build_initial_ast(q, schema);
  } catch (const std::runtime_error& e) {
    diags.error("structure", e.what());
    throw CompileError(std::move(diags));
  }
  switch (stage) {
    case ExplainStage::kParse:
      return explain_parse(ast);
    case ExplainStage::kAst:
      return dump_ast(complete_ast(ast, schema, params, diags).ast);
    case ExplainStage::kSymbols:
      return dump_symbol_table(complete_ast(ast, schema, params, diags).symbols);
    case ExplainStage::kModel: {
      Compilation c = run_pipeline(q, schema, params);
      if (!c.ok()) throw CompileError(std::move(c.diagnostics));
      return dump_generation_model(*c.model);
    }
  }
  return {};
}

}  // namespace vqc
