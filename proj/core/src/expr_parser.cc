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

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "vqc/expr.h"

namespace vqc {
namespace {

constexpr std::string_view kBuiltins[] = {
    "STR", "LANG", "LANGMATCHES", "DATATYPE", "BOUND", "IRI", "URI",
    "BNODE", "RAND", "ABS", "CEIL", "FLOOR", "ROUND", "CONCAT", "SUBSTR",
    "SUBSTRING", "STRLEN", "REPLACE", "UCASE", "LCASE", "ENCODE_FOR_URI",
    "CONTAINS", "STRSTARTS", "STRENDS", "STRBEFORE", "STRAFTER", "YEAR",
    "MONTH", "DAY", "HOURS", "MINUTES", "SECONDS", "TIMEZONE", "TZ", "NOW",
    "UUID", "STRUUID", "MD5", "SHA1", "SHA256", "SHA384", "SHA512",
    "COALESCE", "IF", "STRLANG", "STRDT", "SAMETERM", "ISIRI", "ISURI",
    "ISBLANK", "ISLITERAL", "ISNUMERIC", "REGEX"};

constexpr std::string_view kDateDiffs[] = {"days",  "months",  "years",
                                           "hours", "minutes", "seconds"};

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool is_builtin(std::string_view upper_name) {
  return std::find(std::begin(kBuiltins), std::end(kBuiltins), upper_name) !=
         std::end(kBuiltins);
}

bool is_date_diff(std::string_view name) {
  return std::find(std::begin(kDateDiffs), std::end(kDateDiffs), name) !=
         std::end(kDateDiffs);
}

bool is_alpha(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}
bool is_digit(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }
bool is_name_start(char c) { return is_alpha(c) || c == '_' || is_high(c); }
bool is_word_char(char c) { return is_name_start(c) || is_digit(c); }
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

class Parser {
 public:
  Parser(std::string_view text, ExprPosition position)
      : s_(text), pos_(position) {}

  Expr parse() {
    skip_ws();
    if (eof()) fail("empty expression", {"expression"});
    std::size_t start = i_;
    if (auto control = control_marker()) {
      return *control;
    }
    Expr e;
    if (pos_ == ExprPosition::kClassPosition ||
        pos_ == ExprPosition::kLinkPath) {
      if (peek() == '?') {
        e = variable();
      } else {
        e = name();
      }
    } else if (peek() == '*' && rest_is_blank(i_ + 1)) {
      ++i_;
      e.kind = ExprKind::kStar;
    } else {
      std::optional<Expr> scope;
      if (peek() == '{') scope = try_value_scope();
      e = scope ? std::move(*scope) : or_expr();
    }
    skip_ws();
    if (!eof()) fail("unexpected input", {"end of expression", "operator"});
    e.span = {start, i_};
    return e;
  }

 private:
  // ---- Low-level scanning.
  bool eof() const { return i_ >= s_.size(); }
  char peek(std::size_t k = 0) const {
    return i_ + k < s_.size() ? s_[i_ + k] : '\0';
  }
  char at(std::size_t p) const { return p < s_.size() ? s_[p] : '\0'; }
  std::size_t skip_ws() {
    std::size_t n = 0;
    while (!eof() && is_space(s_[i_])) {
      ++i_;
      ++n;
    }
    return n;
  }
  bool rest_is_blank(std::size_t p) const {
    for (; p < s_.size(); ++p) {
      if (!is_space(s_[p])) return false;
    }
    return true;
  }
  bool is_name_char(char c) const {
    return is_word_char(c) || (c == '-' && !stop_at_hyphen_);
  }

  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected) const {
    std::string msg = message;
    if (!expected.empty()) {
      msg += " (expected ";
      for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k > 0) msg += ", ";
        msg += expected[k];
      }
      msg += ")";
    }
    throw ExprParseError(msg, i_, std::move(expected));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'", {std::string(1, c)});
    ++i_;
  }

  // Case-insensitive keyword at the cursor, followed by a non-name char.
  bool at_word(std::string_view kw) const {
    if (i_ + kw.size() > s_.size()) return false;
    for (std::size_t k = 0; k < kw.size(); ++k) {
      if (std::toupper(static_cast<unsigned char>(s_[i_ + k])) != kw[k]) {
        return false;
      }
    }
    char next = at(i_ + kw.size());
    return !is_name_char(next) && next != ':';
  }

  bool accept_word(std::string_view kw) {
    if (!at_word(kw)) return false;
    i_ += kw.size();
    return true;
  }

  std::string word() {
    std::size_t b = i_;
    while (!eof() && is_word_char(s_[i_])) ++i_;
    return std::string(s_.substr(b, i_ - b));
  }

  // ---- Top-level special forms.
  std::optional<Expr> control_marker() {
    std::size_t save = i_;
    auto make = [&](std::string op) {
      Expr e;
      e.kind = ExprKind::kControl;
      e.op = std::move(op);
      e.span = {save, i_};
      return e;
    };
    if (peek() == '[') {
      ++i_;
      skip_ws();
      bool plus = false;
      if (peek() == '+') {
        plus = true;
        ++i_;
        skip_ws();
      }
      if (peek() == ']' && rest_is_blank(i_ + 1)) {
        ++i_;
        return make(plus ? "[ + ]" : "[ ]");
      }
    } else if (s_.substr(i_).starts_with("(no_class)") &&
               rest_is_blank(i_ + 10)) {
      i_ += 10;
      return make("(no_class)");
    }
    i_ = save;
    return std::nullopt;
  }

  Expr variable() {
    std::size_t b = i_;
    Expr e;
    e.kind = ExprKind::kVariable;
    ++i_;
    if (peek() == '?') {
      e.hidden = true;
      ++i_;
    }
    if (!is_name_start(peek())) fail("expected variable name", {"name"});
    e.op = word();
    e.span = {b, i_};
    return e;
  }

  std::optional<Expr> try_value_scope() {
    std::size_t save = i_;
    try {
      Expr e;
      e.kind = ExprKind::kValueScope;
      ++i_;
      skip_ws();
      while (true) {
        skip_ws();
        if (peek() == '(') {
          Expr row;
          row.kind = ExprKind::kTuple;
          ++i_;
          row.children.push_back(scope_value());
          skip_ws();
          while (peek() == ',') {
            ++i_;
            row.children.push_back(scope_value());
            skip_ws();
          }
          expect(')');
          e.children.push_back(std::move(row));
        } else {
          Expr v = scope_value();
          skip_ws();
          if (v.kind == ExprKind::kLiteral &&
              v.literal_kind == LiteralKind::kInteger &&
              s_.substr(i_).starts_with("..")) {
            i_ += 2;
            skip_ws();
            Expr r;
            r.kind = ExprKind::kRange;
            r.children.push_back(std::move(v));
            r.children.push_back(number());
            if (r.children[1].literal_kind != LiteralKind::kInteger) {
              fail("range bounds must be integers", {"integer"});
            }
            v = std::move(r);
          }
          e.children.push_back(std::move(v));
        }
        skip_ws();
        if (peek() == ',') {
          ++i_;
          continue;
        }
        break;
      }
      expect('}');
      if (!rest_is_blank(i_)) {
        i_ = save;
        return std::nullopt;
      }
      e.span = {save, i_};
      return e;
    } catch (const ExprParseError&) {
      i_ = save;
      return std::nullopt;
    }
  }

  // Values allowed inside a value scope: literals, IRIs and names.
  Expr scope_value() {
    skip_ws();
    char c = peek();
    if (c == '"' || c == '\'') return string_literal();
    if (is_digit(c) || ((c == '-' || c == '+') && is_digit(peek(1)))) {
      return number();
    }
    if (at_word("TRUE") || at_word("FALSE")) return boolean();
    return name();
  }

  // ---- Expression levels.
  Expr or_expr() {
    Expr lhs = and_expr();
    while (true) {
      std::size_t save = i_;
      std::size_t ws = skip_ws();
      if (peek() == '|' && peek(1) == '|') {
        i_ += 2;
      } else if (peek() == '|' && ws > 0) {
        ++i_;
      } else if (ws > 0 && accept_word("OR")) {
      } else {
        i_ = save;
        return lhs;
      }
      lhs = Expr::binary("||", std::move(lhs), and_expr());
    }
  }

  Expr and_expr() {
    Expr lhs = relational();
    while (true) {
      std::size_t save = i_;
      std::size_t ws = skip_ws();
      if (peek() == '&' && peek(1) == '&') {
        i_ += 2;
      } else if (peek() == '&') {
        ++i_;
      } else if (ws > 0 && accept_word("AND")) {
      } else {
        i_ = save;
        return lhs;
      }
      lhs = Expr::binary("&&", std::move(lhs), relational());
    }
  }

  Expr relational() {
    Expr lhs = additive();
    std::size_t save = i_;
    std::size_t ws = skip_ws();
    static constexpr std::string_view kOps[] = {"<=", ">=", "!=", "=",
                                                "<",  ">"};
    for (std::string_view op : kOps) {
      if (s_.substr(i_).starts_with(op)) {
        i_ += op.size();
        if (op == "=" && peek() == '=') ++i_;
        return Expr::binary(std::string(op), std::move(lhs), additive());
      }
    }
    if (peek() == '~') {
      ++i_;
      std::string op = "~";
      if (peek() == '*') {
        ++i_;
        op = "~*";
      }
      return Expr::binary(op, std::move(lhs), additive());
    }
    if (ws > 0) {
      bool negated = false;
      std::size_t kw = i_;
      if (accept_word("NOT")) {
        skip_ws();
        if (!at_word("IN")) {
          i_ = save;
          return lhs;
        }
        negated = true;
      }
      if (accept_word("IN")) return in_list(std::move(lhs), negated, kw);
      if (accept_word("LIKE")) {
        return Expr::binary("LIKE", std::move(lhs), additive());
      }
      if (accept_word("BETWEEN")) {
        Expr e;
        e.kind = ExprKind::kBetween;
        e.children.push_back(std::move(lhs));
        expect('(');
        e.children.push_back(or_expr());
        expect(',');
        e.children.push_back(or_expr());
        expect(')');
        e.span = {e.children.front().span.begin, i_};
        return e;
      }
    }
    i_ = save;
    return lhs;
  }

  Expr in_list(Expr lhs, bool negated, std::size_t kw) {
    Expr e;
    e.kind = ExprKind::kIn;
    e.negated = negated;
    std::size_t begin = lhs.span.begin;
    e.children.push_back(std::move(lhs));
    skip_ws();
    char open = peek();
    if (open != '(' && open != '{') fail("expected list after IN", {"(", "{"});
    char close = open == '(' ? ')' : '}';
    ++i_;
    skip_ws();
    if (open == '{' && is_digit(peek())) {
      std::size_t save = i_;
      Expr lo = number();
      skip_ws();
      if (lo.literal_kind == LiteralKind::kInteger &&
          s_.substr(i_).starts_with("..")) {
        i_ += 2;
        skip_ws();
        Expr hi = number();
        if (hi.literal_kind != LiteralKind::kInteger) {
          fail("range bounds must be integers", {"integer"});
        }
        Expr r;
        r.kind = ExprKind::kRange;
        r.children.push_back(std::move(lo));
        r.children.push_back(std::move(hi));
        e.children.push_back(std::move(r));
        expect('}');
        e.span = {begin, i_};
        return e;
      }
      i_ = save;
    }
    if (peek() != close) {
      e.children.push_back(or_expr());
      skip_ws();
      while (peek() == ',') {
        ++i_;
        e.children.push_back(or_expr());
        skip_ws();
      }
    }
    expect(close);
    (void)kw;
    e.span = {begin, i_};
    return e;
  }

  Expr additive() {
    Expr lhs = multiplicative();
    while (true) {
      std::size_t save = i_;
      std::size_t ws = skip_ws();
      if (ws == 0) break;
      if (peek() == '+' && peek(1) == '+' && is_space(peek(2))) {
        i_ += 2;
        lhs = Expr::binary("++", std::move(lhs), multiplicative());
        continue;
      }
      char c = peek();
      if ((c == '+' || c == '-') && is_space(peek(1))) {
        ++i_;
        lhs = Expr::binary(std::string(1, c), std::move(lhs), multiplicative());
        continue;
      }
      if ((c == '+' || c == '-') && is_digit(peek(1))) {
        // "a -5" reads as a - 5.
        ++i_;
        lhs = Expr::binary(std::string(1, c), std::move(lhs), multiplicative());
        continue;
      }
      i_ = save;
      break;
    }
    return lhs;
  }

  Expr multiplicative() {
    Expr lhs = unary();
    while (true) {
      std::size_t save = i_;
      std::size_t ws = skip_ws();
      char c = peek();
      if (ws > 0 && (c == '*' || c == '/' || c == '?') && is_space(peek(1))) {
        ++i_;
        lhs = Expr::binary(std::string(1, c), std::move(lhs), unary());
        continue;
      }
      i_ = save;
      return lhs;
    }
  }

  Expr unary() {
    skip_ws();
    std::size_t b = i_;
    char c = peek();
    if (c == '!' && peek(1) != '=') {
      ++i_;
      Expr e;
      e.kind = ExprKind::kUnary;
      e.op = "!";
      e.children.push_back(unary());
      e.span = {b, i_};
      return e;
    }
    if ((c == '-' || c == '+') && !is_digit(peek(1)) && peek(1) != '.') {
      ++i_;
      Expr e;
      e.kind = ExprKind::kUnary;
      e.op = std::string(1, c);
      e.children.push_back(unary());
      e.span = {b, i_};
      return e;
    }
    return primary();
  }

  // ---- Primaries.
  Expr primary() {
    skip_ws();
    std::size_t b = i_;
    char c = peek();
    if (eof()) fail("unexpected end of expression", {"expression"});
    if (c == '(') {
      if (auto ce = class_expr()) return *ce;
      ++i_;
      Expr inner = or_expr();
      expect(')');
      return inner;
    }
    if (c == '"' || c == '\'') return string_literal();
    if (is_digit(c) || (c == '.' && is_digit(peek(1))) ||
        ((c == '-' || c == '+') && (is_digit(peek(1)) || peek(1) == '.'))) {
      return number();
    }
    if (c == '.') {
      ++i_;
      Expr e;
      e.kind = ExprKind::kClassExpr;
      e.op = ".";
      e.span = {b, i_};
      return e;
    }
    if (c == '{') {
      ++i_;
      Expr e;
      e.kind = ExprKind::kExists;
      e.children.push_back(or_expr());
      expect('}');
      e.span = {b, i_};
      return e;
    }
    if (c == '?' || c == '$') {
      fail("explicit variables are only allowed for classes and links",
           {"name"});
    }
    if (c == '<') {
      std::size_t save = i_;
      std::string iri = iri_ref();
      if (peek() == '(') return call_args(iri, b);
      i_ = save;
      return name();
    }
    if (c == '`' || c == '@' || c == '^' || c == '[' || c == ':') {
      return name();
    }
    if (!is_name_start(c)) fail("unexpected character", {"expression"});

    std::string w = word();
    std::string uw = upper(w);
    char next = peek();
    bool word_end = !is_name_char(next) && next != ':';
    if (word_end && (uw == "TRUE" || uw == "FALSE")) {
      i_ = b;
      return boolean();
    }
    if (word_end && uw == "NOT") {
      skip_ws();
      if (peek() == '{' || at_word("EXISTS")) {
        accept_word("EXISTS");
        Expr e = exists_body(b);
        e.negated = true;
        return e;
      }
      fail("expected EXISTS after NOT", {"EXISTS", "{"});
    }
    if (word_end && uw == "EXISTS") return exists_body(b);
    if (next == '(' || (word_end && is_space(next) && known_function(w))) {
      std::size_t after = i_;
      skip_ws();
      if (peek() == '(') {
        if (uw == "INV") {
          i_ = b;
          return name();
        }
        if (is_aggregate_function(uw)) return aggregate(uw, b);
        if (is_date_diff(w)) {
          if (auto dd = try_date_diff(w, b)) return *dd;
        }
        if (is_builtin(uw)) return call_args(uw, b);
        fail("unknown function '" + w + "'", {"function name"});
      }
      i_ = after;
    }
    i_ = b;
    Expr n = name();
    // prefix:local(...) is a function call by IRI.
    if (peek() == '(' && n.name->is_single_step() && !n.name->reference_mark &&
        !n.name->constant_mark && n.name->lang_tags.empty() &&
        !n.name->substring && n.name->path().front().modifier == 0 &&
        !n.name->path().front().inverse &&
        n.name->path().front().text.find(':') != std::string::npos) {
      return call_args(n.name->path().front().text, b);
    }
    return n;
  }

  bool known_function(const std::string& w) const {
    std::string uw = upper(w);
    return is_aggregate_function(uw) || is_builtin(uw) || uw == "INV";
  }

  std::optional<Expr> class_expr() {
    std::size_t b = i_;
    ++i_;
    skip_ws();
    bool ok = false;
    if (peek() == '.') {
      ++i_;
      ok = true;
    } else if (accept_word("THIS")) {
      ok = true;
    } else if (accept_word("SELECT")) {
      skip_ws();
      ok = accept_word("THIS");
    }
    if (ok) {
      skip_ws();
      if (peek() == ')') {
        ++i_;
        Expr e;
        e.kind = ExprKind::kClassExpr;
        e.op = ".";
        e.span = {b, i_};
        return e;
      }
    }
    i_ = b;
    return std::nullopt;
  }

  Expr exists_body(std::size_t b) {
    skip_ws();
    Expr e;
    e.kind = ExprKind::kExists;
    if (peek() == '(' || peek() == '{') {
      char close = peek() == '(' ? ')' : '}';
      ++i_;
      e.children.push_back(or_expr());
      expect(close);
    } else {
      e.children.push_back(unary());
    }
    e.span = {b, i_};
    return e;
  }

  Expr call_args(std::string fname, std::size_t b) {
    expect('(');
    Expr e;
    e.kind = ExprKind::kCall;
    e.op = std::move(fname);
    skip_ws();
    if (peek() != ')') {
      e.children.push_back(or_expr());
      skip_ws();
      while (peek() == ',') {
        ++i_;
        e.children.push_back(or_expr());
        skip_ws();
      }
    }
    expect(')');
    e.span = {b, i_};
    return e;
  }

  Expr aggregate(std::string uname, std::size_t b) {
    expect('(');
    Expr e;
    e.kind = ExprKind::kAggregate;
    e.op = std::move(uname);
    skip_ws();
    if (accept_word("DISTINCT")) {
      e.distinct = true;
      skip_ws();
    }
    if (peek() == '*' && !is_word_char(peek(1))) {
      ++i_;
      Expr star;
      star.kind = ExprKind::kStar;
      e.children.push_back(std::move(star));
    } else {
      e.children.push_back(or_expr());
    }
    skip_ws();
    if (peek() == ';') {
      ++i_;
      skip_ws();
      if (!accept_word("SEPARATOR")) fail("expected SEPARATOR", {"SEPARATOR"});
      expect('=');
      skip_ws();
      e.separator = string_literal().op;
    } else if (peek() == ',' && e.op == "GROUP_CONCAT") {
      ++i_;
      skip_ws();
      e.separator = string_literal().op;
    }
    expect(')');
    e.span = {b, i_};
    return e;
  }

  std::optional<Expr> try_date_diff(const std::string& fname, std::size_t b) {
    std::size_t save = i_;
    bool saved_stop = stop_at_hyphen_;
    try {
      expect('(');
      stop_at_hyphen_ = true;
      Expr lhs = unary();
      skip_ws();
      if (peek() != '-') fail("expected '-'", {"-"});
      ++i_;
      Expr rhs = unary();
      expect(')');
      stop_at_hyphen_ = saved_stop;
      Expr e = Expr::call(fname, {std::move(lhs), std::move(rhs)});
      e.span = {b, i_};
      return e;
    } catch (const ExprParseError&) {
      stop_at_hyphen_ = saved_stop;
      if (is_builtin(upper(fname))) {
        i_ = save;
        return std::nullopt;
      }
      throw;
    }
  }

  // ---- Literals.
  Expr string_literal() {
    std::size_t b = i_;
    char q = peek();
    if (q != '"' && q != '\'') fail("expected string", {"string"});
    ++i_;
    std::string value;
    while (true) {
      if (eof()) fail("unterminated string", {std::string(1, q)});
      char c = s_[i_++];
      if (c == q) break;
      if (c == '\\') {
        if (eof()) fail("unterminated string", {std::string(1, q)});
        char n = s_[i_++];
        switch (n) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          default: value += n;
        }
      } else {
        value += c;
      }
    }
    Expr e = Expr::string_literal(std::move(value));
    if (peek() == '@' && is_alpha(peek(1))) {
      ++i_;
      e.lang = lang_tag();
    } else if (peek() == '^' && peek(1) == '^') {
      i_ += 2;
      if (peek() == '<') {
        e.datatype = iri_ref();
      } else {
        std::size_t d = i_;
        while (!eof() && (is_word_char(s_[i_]) || s_[i_] == ':' ||
                          s_[i_] == '-')) {
          ++i_;
        }
        e.datatype = std::string(s_.substr(d, i_ - d));
        if (e.datatype.find(':') == std::string::npos) {
          fail("expected datatype", {"datatype"});
        }
      }
    }
    e.span = {b, i_};
    return e;
  }

  Expr number() {
    skip_ws();
    std::size_t b = i_;
    if (peek() == '-' || peek() == '+') ++i_;
    LiteralKind kind = LiteralKind::kInteger;
    while (is_digit(peek())) ++i_;
    if (peek() == '.' && is_digit(peek(1))) {
      kind = LiteralKind::kDecimal;
      ++i_;
      while (is_digit(peek())) ++i_;
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) ||
         ((peek(1) == '-' || peek(1) == '+') && is_digit(peek(2))))) {
      kind = LiteralKind::kDouble;
      i_ += 2;
      while (is_digit(peek())) ++i_;
    }
    std::string lex(s_.substr(b, i_ - b));
    if (lex.empty() || lex == "-" || lex == "+") fail("expected number", {"number"});
    if (is_name_start(peek())) fail("malformed number", {"number"});
    Expr e = Expr::literal(kind, lex);
    e.span = {b, i_};
    return e;
  }

  Expr boolean() {
    std::size_t b = i_;
    std::string w = upper(word());
    Expr e = Expr::literal(LiteralKind::kBoolean, w == "TRUE" ? "true" : "false");
    e.span = {b, i_};
    return e;
  }

  std::string lang_tag() {
    std::size_t b = i_;
    while (is_alpha(peek())) ++i_;
    while (peek() == '-' && std::isalnum(static_cast<unsigned char>(peek(1)))) {
      ++i_;
      while (std::isalnum(static_cast<unsigned char>(peek()))) ++i_;
    }
    if (i_ == b) fail("expected language tag", {"language tag"});
    return std::string(s_.substr(b, i_ - b));
  }

  std::string iri_ref() {
    std::size_t b = i_;
    ++i_;
    while (!eof() && s_[i_] != '>') {
      if (is_space(s_[i_])) fail("space inside IRI", {">"});
      ++i_;
    }
    if (eof()) fail("unterminated IRI", {">"});
    ++i_;
    return std::string(s_.substr(b, i_ - b));
  }

  // ---- Names and paths.
  bool step_start(std::size_t p) const {
    char c = at(p);
    return c == '^' || c == '<' || c == '[' || c == ':' || is_name_start(c);
  }

  Expr name() {
    skip_ws();
    std::size_t b = i_;
    NameEntity n;
    if (peek() == '@') {
      n.reference_mark = true;
      ++i_;
    } else if (peek() == '`') {
      n.constant_mark = true;
      ++i_;
    }
    n.alternatives.push_back(sequence());
    while (peek() == '|' && step_start(i_ + 1)) {
      ++i_;
      n.alternatives.push_back(sequence());
    }
    if (peek() == '@' && (is_alpha(peek(1)) || peek(1) == '(')) {
      ++i_;
      if (peek() == '(') {
        ++i_;
        skip_ws();
        n.lang_tags.push_back(lang_tag());
        skip_ws();
        while (peek() == ',') {
          ++i_;
          skip_ws();
          n.lang_tags.push_back(lang_tag());
          skip_ws();
        }
        expect(')');
      } else {
        n.lang_tags.push_back(lang_tag());
      }
    }
    if (peek() == '[' && is_digit(peek(1))) {
      ++i_;
      long long first = integer_value();
      std::optional<long long> second;
      skip_ws();
      if (peek() == ',') {
        ++i_;
        skip_ws();
        second = integer_value();
      }
      expect(']');
      n.substring = std::make_pair(first, second);
    }
    n.raw_text = std::string(s_.substr(b, i_ - b));
    Expr e;
    e.kind = ExprKind::kName;
    e.name = std::move(n);
    e.span = {b, i_};
    return e;
  }

  long long integer_value() {
    std::size_t b = i_;
    while (is_digit(peek())) ++i_;
    if (i_ == b) fail("expected integer", {"integer"});
    return std::stoll(std::string(s_.substr(b, i_ - b)));
  }

  PathSequence sequence() {
    PathSequence seq;
    seq.push_back(step());
    while ((peek() == '.' || peek() == '/') && step_start(i_ + 1)) {
      ++i_;
      seq.push_back(step());
    }
    return seq;
  }

  PathStep step() {
    PathStep st;
    if (peek() == '^') {
      st.inverse = true;
      ++i_;
    }
    if (at_word("INV") && peek(3) == '(') {
      i_ += 4;
      skip_ws();
      PathStep inner = step();
      skip_ws();
      if (peek() != ')') fail("expected ')' after INV argument", {")"});
      ++i_;
      inner.inverse = inner.inverse != !st.inverse;
      st = std::move(inner);
    } else {
      st.text = element();
    }
    char m = peek();
    if ((m == '?' || m == '*' || m == '+') && st.modifier == 0 &&
        !is_word_char(peek(1)) && peek(1) != '(' && peek(1) != '+') {
      st.modifier = m;
      ++i_;
    }
    return st;
  }

  std::string element() {
    std::size_t b = i_;
    char c = peek();
    if (c == '<') return iri_ref();
    if (c == '[') {
      display();
      return std::string(s_.substr(b, i_ - b));
    }
    if (c == ':') {
      ++i_;
      local_part();
      return std::string(s_.substr(b, i_ - b));
    }
    if (!is_name_start(c)) fail("expected name", {"name"});
    ident();
    if (peek() == ':' &&
        (is_word_char(peek(1)) || peek(1) == '[' || peek(1) == '\0' ||
         is_space(peek(1)))) {
      ++i_;
      local_part();
    }
    return std::string(s_.substr(b, i_ - b));
  }

  void ident() {
    while (!eof() && is_name_char(s_[i_])) ++i_;
    while (s_[i_ - 1] == '-') --i_;
  }

  void local_part() {
    if (peek() == '[') {
      display();
      return;
    }
    std::size_t b = i_;
    while (!eof() && is_name_char(s_[i_])) ++i_;
    while (i_ > b && s_[i_ - 1] == '-') --i_;
  }

  void display() {
    ++i_;
    while (!eof() && s_[i_] != ']') ++i_;
    if (eof()) fail("unterminated display name", {"]"});
    ++i_;
  }

  std::string_view s_;
  ExprPosition pos_;
  std::size_t i_ = 0;
  bool stop_at_hyphen_ = false;
};

}  // namespace

Expr parse_expression(std::string_view text, ExprPosition position) {
  return Parser(text, position).parse();
}

}  // namespace vqc
