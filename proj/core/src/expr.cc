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

#include "vqc/expr.h"

#include <sstream>

namespace vqc {

std::string_view to_string(NameKind k) {
  switch (k) {
    case NameKind::kPropertyName: return "PROPERTY_NAME";
    case NameKind::kClassName: return "CLASS_NAME";
    case NameKind::kPropertyAlias: return "PROPERTY_ALIAS";
    case NameKind::kBindAlias: return "BIND_ALIAS";
    case NameKind::kClassAlias: return "CLASS_ALIAS";
    case NameKind::kAggregateAlias: return "AGGREGATE_ALIAS";
    case NameKind::kReferenceToAlias: return "REFERENCE_TO_ALIAS";
    case NameKind::kUnresolvedFieldAlias: return "UNRESOLVED_FIELD_ALIAS";
    case NameKind::kUnresolvedName: return "UNRESOLVED_NAME";
  }
  return "?";
}

namespace {

std::string step_text(const PathStep& s) {
  std::string out;
  if (s.inverse) out += '^';
  out += s.text;
  if (s.modifier != 0) out += s.modifier;
  return out;
}

std::string quote(std::string_view v) {
  std::string out = "\"";
  for (char c : v) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

bool is_date_diff_shorthand(std::string_view op) {
  return op == "days" || op == "months" || op == "years" || op == "hours" ||
         op == "minutes" || op == "seconds";
}

bool needs_parens(const Expr& e) {
  return e.kind == ExprKind::kBinary || e.kind == ExprKind::kIn ||
         e.kind == ExprKind::kBetween;
}

std::string wrap(const Expr& e) {
  std::string t = to_canonical(e);
  return needs_parens(e) ? "(" + t + ")" : t;
}

int binary_precedence(const Expr& e) {
  if (e.kind == ExprKind::kIn || e.kind == ExprKind::kBetween) return 3;
  if (e.kind != ExprKind::kBinary) return 7;
  if (e.op == "||") return 1;
  if (e.op == "&&") return 2;
  if (e.op == "+" || e.op == "-") return 4;
  if (e.op == "*" || e.op == "/") return 5;
  return 3;
}

// Operand of a binary operator: parenthesized only when needed.
std::string operand(const Expr& parent, const Expr& child, bool right) {
  int p = binary_precedence(parent);
  int c = binary_precedence(child);
  bool paren = right ? c <= p : (c < p || (c == 3 && p == 3));
  std::string t = to_canonical(child);
  return paren ? "(" + t + ")" : t;
}

std::string range_text(const Expr& r) {
  return to_canonical(r.children.at(0)) + ".." + to_canonical(r.children.at(1));
}

bool names_equal(const NameEntity& a, const NameEntity& b) {
  return a.reference_mark == b.reference_mark &&
         a.constant_mark == b.constant_mark &&
         a.alternatives == b.alternatives && a.lang_tags == b.lang_tags &&
         a.substring == b.substring;
}

template <typename E, typename Out>
void collect(E& e, Out& out) {
  if (e.kind == ExprKind::kName && e.name) out.push_back(&*e.name);
  for (auto& c : e.children) collect(c, out);
}

std::string_view kind_name(ExprKind k) {
  switch (k) {
    case ExprKind::kLiteral: return "literal";
    case ExprKind::kName: return "name";
    case ExprKind::kVariable: return "variable";
    case ExprKind::kUnary: return "unary";
    case ExprKind::kBinary: return "binary";
    case ExprKind::kCall: return "call";
    case ExprKind::kAggregate: return "aggregate";
    case ExprKind::kExists: return "exists";
    case ExprKind::kIn: return "in";
    case ExprKind::kRange: return "range";
    case ExprKind::kBetween: return "between";
    case ExprKind::kClassExpr: return "class-expr";
    case ExprKind::kValueScope: return "value-scope";
    case ExprKind::kTuple: return "tuple";
    case ExprKind::kControl: return "control";
    case ExprKind::kStar: return "star";
  }
  return "?";
}

void dump(const Expr& e, int depth, std::ostringstream& os) {
  os << std::string(depth * 2, ' ') << kind_name(e.kind);
  switch (e.kind) {
    case ExprKind::kLiteral:
      os << ' '
         << (e.literal_kind == LiteralKind::kString ? quote(e.op) : e.op);
      if (!e.lang.empty()) os << '@' << e.lang;
      if (!e.datatype.empty()) os << "^^" << e.datatype;
      break;
    case ExprKind::kName: {
      const NameEntity& n = *e.name;
      os << ' ' << to_canonical(e);
      if (n.resolution) {
        const NameResolution& r = *n.resolution;
        os << " [" << (r.kind ? to_string(*r.kind) : "null");
        if (r.type) os << " type=" << r.type->prefix << ':' << r.type->local_name;
        if (!r.context.empty()) os << " context=" << r.context;
        os << ']';
      }
      break;
    }
    default:
      if (!e.op.empty()) os << ' ' << e.op;
      if (e.distinct) os << " DISTINCT";
      if (e.negated) os << " NOT";
      if (e.separator) os << " separator=" << quote(*e.separator);
  }
  os << '\n';
  for (const Expr& c : e.children) dump(c, depth + 1, os);
}

}  // namespace

std::string NameEntity::path_text() const {
  std::string out;
  for (std::size_t a = 0; a < alternatives.size(); ++a) {
    if (a > 0) out += '|';
    for (std::size_t i = 0; i < alternatives[a].size(); ++i) {
      if (i > 0) out += '/';
      out += step_text(alternatives[a][i]);
    }
  }
  return out;
}

Expr Expr::literal(LiteralKind k, std::string lexical) {
  Expr e;
  e.kind = ExprKind::kLiteral;
  e.literal_kind = k;
  e.op = std::move(lexical);
  return e;
}

Expr Expr::string_literal(std::string value) {
  return literal(LiteralKind::kString, std::move(value));
}

Expr Expr::integer(long long v) {
  return literal(LiteralKind::kInteger, std::to_string(v));
}

Expr Expr::binary(std::string op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::kBinary;
  e.op = std::move(op);
  e.span = {lhs.span.begin, rhs.span.end};
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

Expr Expr::call(std::string name, std::vector<Expr> args) {
  Expr e;
  e.kind = ExprKind::kCall;
  e.op = std::move(name);
  e.children = std::move(args);
  if (!e.children.empty()) {
    e.span = {e.children.front().span.begin, e.children.back().span.end};
  }
  return e;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.op != b.op || a.literal_kind != b.literal_kind ||
      a.lang != b.lang || a.datatype != b.datatype ||
      a.distinct != b.distinct || a.negated != b.negated ||
      a.hidden != b.hidden || a.separator != b.separator ||
      a.name.has_value() != b.name.has_value() ||
      a.children.size() != b.children.size()) {
    return false;
  }
  if (a.name && !names_equal(*a.name, *b.name)) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

ExprParseError::ExprParseError(const std::string& message, std::size_t offset,
                               std::vector<std::string> expected)
    : std::runtime_error(message),
      offset_(offset),
      expected_(std::move(expected)) {}

std::vector<const NameEntity*> collect_name_entities(const Expr& e) {
  std::vector<const NameEntity*> out;
  collect(e, out);
  return out;
}

std::vector<NameEntity*> collect_name_entities(Expr& e) {
  std::vector<NameEntity*> out;
  collect(e, out);
  return out;
}

std::string to_canonical(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kLiteral: {
      if (e.literal_kind != LiteralKind::kString) return e.op;
      std::string out = quote(e.op);
      if (!e.lang.empty()) out += "@" + e.lang;
      if (!e.datatype.empty()) out += "^^" + e.datatype;
      return out;
    }
    case ExprKind::kName: {
      const NameEntity& n = *e.name;
      std::string out;
      if (n.reference_mark) out += '@';
      if (n.constant_mark) out += '`';
      out += n.path_text();
      if (n.lang_tags.size() == 1) {
        out += "@" + n.lang_tags.front();
      } else if (n.lang_tags.size() > 1) {
        out += "@(";
        for (std::size_t i = 0; i < n.lang_tags.size(); ++i) {
          if (i > 0) out += ",";
          out += n.lang_tags[i];
        }
        out += ")";
      }
      if (n.substring) {
        out += "[" + std::to_string(n.substring->first);
        if (n.substring->second) {
          out += "," + std::to_string(*n.substring->second);
        }
        out += "]";
      }
      return out;
    }
    case ExprKind::kVariable:
      return (e.hidden ? "??" : "?") + e.op;
    case ExprKind::kUnary:
      return e.op + wrap(e.children.at(0));
    case ExprKind::kBinary:
      return operand(e, e.children.at(0), false) + " " + e.op + " " +
             operand(e, e.children.at(1), true);
    case ExprKind::kCall: {
      if (is_date_diff_shorthand(e.op) && e.children.size() == 2) {
        return e.op + "(" + wrap(e.children[0]) + " - " + wrap(e.children[1]) +
               ")";
      }
      std::string out = e.op + "(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_canonical(e.children[i]);
      }
      return out + ")";
    }
    case ExprKind::kAggregate: {
      std::string out = e.op + "(";
      if (e.distinct) out += "DISTINCT ";
      if (!e.children.empty()) out += to_canonical(e.children.front());
      if (e.separator) out += "; SEPARATOR=" + quote(*e.separator);
      return out + ")";
    }
    case ExprKind::kExists:
      return std::string(e.negated ? "NOT " : "") + "EXISTS(" +
             to_canonical(e.children.at(0)) + ")";
    case ExprKind::kIn: {
      std::string out = wrap(e.children.at(0));
      out += e.negated ? " NOT IN " : " IN ";
      if (e.children.size() == 2 && e.children[1].kind == ExprKind::kRange) {
        return out + "{" + range_text(e.children[1]) + "}";
      }
      out += "(";
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        if (i > 1) out += ", ";
        out += to_canonical(e.children[i]);
      }
      return out + ")";
    }
    case ExprKind::kRange:
      return "{" + range_text(e) + "}";
    case ExprKind::kBetween:
      return wrap(e.children.at(0)) + " BETWEEN (" +
             to_canonical(e.children.at(1)) + ", " +
             to_canonical(e.children.at(2)) + ")";
    case ExprKind::kClassExpr:
      return ".";
    case ExprKind::kValueScope: {
      std::string out = "{";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += ", ";
        const Expr& c = e.children[i];
        out += c.kind == ExprKind::kRange ? range_text(c) : to_canonical(c);
      }
      return out + "}";
    }
    case ExprKind::kTuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_canonical(e.children[i]);
      }
      return out + ")";
    }
    case ExprKind::kControl:
      return e.op;
    case ExprKind::kStar:
      return "*";
  }
  return {};
}

std::string dump_tree(const Expr& e) {
  std::ostringstream os;
  dump(e, 0, os);
  return os.str();
}

std::string like_to_regex(std::string_view pattern) {
  bool anchor_start = true;
  bool anchor_end = true;
  if (!pattern.empty() && pattern.front() == '%') {
    anchor_start = false;
    pattern.remove_prefix(1);
  }
  if (!pattern.empty() && pattern.back() == '%') {
    anchor_end = false;
    pattern.remove_suffix(1);
  }
  std::string out = anchor_start ? "^" : "";
  for (char c : pattern) {
    switch (c) {
      case '%': out += ".*"; break;
      case '_': out += '.'; break;
      case '.': case '*': case '+': case '?': case '(': case ')':
      case '[': case ']': case '{': case '}': case '|': case '^':
      case '$': case '\\':
        out += '\\';
        out += c;
        break;
      default: out += c;
    }
  }
  if (anchor_end) out += '$';
  return out;
}

bool is_aggregate_function(std::string_view upper_name) {
  return upper_name == "COUNT" || upper_name == "SUM" ||
         upper_name == "MIN" || upper_name == "MAX" || upper_name == "AVG" ||
         upper_name == "SAMPLE" || upper_name == "GROUP_CONCAT" ||
         upper_name == "COUNT_DISTINCT";
}

bool contains_aggregate(const Expr& e) {
  if (e.kind == ExprKind::kAggregate) return true;
  for (const Expr& c : e.children) {
    if (contains_aggregate(c)) return true;
  }
  return false;
}

}  // namespace vqc
