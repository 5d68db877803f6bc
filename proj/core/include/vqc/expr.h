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

// Expression trees for compartment texts. Expressions follow SPARQL 1.1
// expression syntax with names in place of variables, plus a handful of
// shorthands (~, ~*, LIKE, BETWEEN, name[i], INV(p), a.b paths, @lang,
// days(a - b)) that desugar() rewrites into core forms.

#ifndef VQC_EXPR_H_
#define VQC_EXPR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vqc/diagnostics.h"
#include "vqc/schema.h"

namespace vqc {

struct Params;

enum class ExprPosition {
  kField,
  kCondition,
  kAggregation,
  kGroupBy,
  kOrderBy,
  kClassPosition,
  kLinkPath,
};

enum class ExprKind {
  kLiteral,
  kName,        // name entity: property path, alias or schema entity
  kVariable,    // explicit ?x / ??x (class/property position)
  kUnary,       // op: "!", "-", "+"
  kBinary,      // op: ||, &&, =, !=, <, <=, >, >=, +, -, *, /, ~, ~*, LIKE,
                //     "?" (coalesce shorthand), "++" (concat shorthand)
  kCall,        // op: builtin name (upper case), shorthand name or IRI
  kAggregate,   // op: COUNT, SUM, MIN, MAX, AVG, SAMPLE, GROUP_CONCAT,
                //     COUNT_DISTINCT
  kExists,      // negated => NOT EXISTS
  kIn,          // children[0] IN children[1..]; negated => NOT IN
  kRange,       // lo..hi integer range inside IN {..} or a value scope
  kBetween,     // children: value, low, high
  kClassExpr,   // (.), ., (this), (select this)
  kValueScope,  // { ... } VALUES shorthand; children are rows or values
  kTuple,       // one row of a tuple value scope
  kControl,     // "[ ]", "[ + ]", "(no_class)"
  kStar,        // "*"
};

enum class LiteralKind { kString, kInteger, kDecimal, kDouble, kBoolean };

// Kind of a query-defined or schema name, as recorded in the symbol table.
enum class NameKind {
  kPropertyName,
  kClassName,
  kPropertyAlias,
  kBindAlias,
  kClassAlias,
  kAggregateAlias,
  kReferenceToAlias,
  kUnresolvedFieldAlias,
  kUnresolvedName,
};

std::string_view to_string(NameKind k);

struct PathStep {
  std::string text;  // name form: local, prefix:local, <iri>, [display], a
  bool inverse = false;
  char modifier = 0;  // 0, '?', '*' or '+'

  // Set by name resolution.
  std::string term;  // SPARQL term for the step
  std::optional<EntityRef> entity;

  bool operator==(const PathStep& o) const {
    return text == o.text && inverse == o.inverse && modifier == o.modifier;
  }
};

// A path as alternatives of step sequences; almost always one sequence.
using PathSequence = std::vector<PathStep>;

struct NameResolution {
  // Unset kind means the name could not be resolved (kind/type null); it is
  // still emitted as a property in the default namespace or as written.
  std::optional<NameKind> kind;
  std::optional<EntityRef> type;
  // Defining node id for aliases; the using node for schema names.
  std::string context;
  // True when the first path step names a query-defined name.
  bool alias_start = false;
  // Element ids of the visible definitions (several for shared aliases).
  std::vector<std::string> definitions;
  // Names crossing an optional/union boundary upward: usable as a value,
  // not as the start of a navigation.
  bool value_only = false;
  bool constant = false;  // back-tick resource
};

struct NameEntity {
  std::string raw_text;
  bool reference_mark = false;  // @name
  bool constant_mark = false;   // `name
  std::vector<PathSequence> alternatives;
  std::vector<std::string> lang_tags;
  std::optional<std::pair<long long, std::optional<long long>>> substring;
  std::optional<NameResolution> resolution;

  const PathSequence& path() const { return alternatives.front(); }
  bool is_single_step() const {
    return alternatives.size() == 1 && alternatives.front().size() == 1;
  }
  // Canonical text of the path alone (steps joined by '/'), used as the
  // identity of implicit property-name definitions and auto variables.
  std::string path_text() const;
};

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct Expr {
  ExprKind kind = ExprKind::kLiteral;
  std::string op;  // operator, function name, literal lexical form
  LiteralKind literal_kind = LiteralKind::kString;
  std::string lang;      // literal language tag
  std::string datatype;  // literal ^^datatype text
  bool distinct = false;
  bool negated = false;
  bool hidden = false;  // ??var
  std::optional<std::string> separator;
  std::optional<NameEntity> name;
  std::vector<Expr> children;
  SourceSpan span;

  static Expr literal(LiteralKind k, std::string lexical);
  static Expr string_literal(std::string value);
  static Expr integer(long long v);
  static Expr binary(std::string op, Expr lhs, Expr rhs);
  static Expr call(std::string name, std::vector<Expr> args);
};

// Structural equality: ignores spans and resolution data.
bool structurally_equal(const Expr& a, const Expr& b);

class ExprParseError : public std::runtime_error {
 public:
  ExprParseError(const std::string& message, std::size_t offset,
                 std::vector<std::string> expected);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Parses an expression text. Arithmetic + - * / are operators only when
// surrounded by spaces; otherwise they are name/path material. Explicit
// ?variables are accepted only in class and link-path positions.
Expr parse_expression(std::string_view text, ExprPosition position);

// Name entities in variable positions, left to right.
std::vector<const NameEntity*> collect_name_entities(const Expr& e);
std::vector<NameEntity*> collect_name_entities(Expr& e);

// Rewrites shorthands into core SPARQL-shaped forms. Engine-specific
// shorthands under the GENERAL engine are reported to `diags`.
Expr desugar(const Expr& e, const Params& params, ExprPosition position,
             Diagnostics* diags = nullptr);

// VIRTUOSO: date-difference shorthands become bif:datediff with
// xsd:dateTime wrapping of xsd:date arguments; SUBSTR becomes
// bif:substring. GENERAL: identity.
Expr apply_engine_transforms(const Expr& e, const Params& params);

// Canonical expression text; parse_expression(to_canonical(e)) is
// structurally equal to e.
std::string to_canonical(const Expr& e);

// Indented tree dump used by `explain --stage parse`.
std::string dump_tree(const Expr& e);

// Translates a LIKE pattern (% and _ wildcards) into a regular expression.
std::string like_to_regex(std::string_view pattern);

bool is_aggregate_function(std::string_view upper_name);
bool contains_aggregate(const Expr& e);

}  // namespace vqc

#endif  // VQC_EXPR_H_
