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

#include <utility>

#include "vqc/expr.h"
#include "vqc/params.h"

namespace vqc {
namespace {

constexpr long long kMaxRangeExpansion = 10000;

std::optional<std::string> date_unit(std::string_view fname) {
  if (fname == "days") return "day";
  if (fname == "months") return "month";
  if (fname == "years") return "year";
  if (fname == "hours") return "hour";
  if (fname == "minutes") return "minute";
  if (fname == "seconds") return "second";
  return std::nullopt;
}

bool is_xsd_date(const Expr& e) {
  if (e.kind != ExprKind::kName || !e.name->resolution) return false;
  const auto& type = e.name->resolution->type;
  if (!type || !type->property || !type->property->data_type) return false;
  const std::string& dt = *type->property->data_type;
  return dt == "xsd:date" || dt == "http://www.w3.org/2001/XMLSchema#date";
}

Expr date_diff(const Expr& call, const std::string& unit) {
  std::vector<Expr> args;
  args.push_back(Expr::string_literal(unit));
  for (const Expr& a : call.children) args.push_back(a);
  Expr out = Expr::call("bif:datediff", std::move(args));
  out.span = call.span;
  return out;
}

class Desugarer {
 public:
  Desugarer(const Params& params, ExprPosition position, Diagnostics* diags)
      : params_(params), position_(position), diags_(diags) {}

  Expr run(const Expr& e) {
    Expr out = rewrite(e);
    for (Expr& c : lang_conjuncts_) {
      out = Expr::binary("&&", std::move(out), std::move(c));
    }
    return out;
  }

 private:
  void report(const std::string& code, const std::string& message) {
    if (diags_ != nullptr) diags_->error(code, message);
  }
  void experimental(const std::string& what) {
    if (diags_ != nullptr) {
      diags_->warning("experimental", what + " is experimental");
    }
  }

  Expr rewrite(const Expr& e) {
    Expr out = e;
    for (Expr& c : out.children) c = rewrite(c);

    switch (out.kind) {
      case ExprKind::kBinary:
        return rewrite_binary(std::move(out));
      case ExprKind::kBetween: {
        Expr value = out.children[0];
        Expr lo = Expr::binary(">=", value, std::move(out.children[1]));
        Expr hi = Expr::binary("<=", std::move(value),
                               std::move(out.children[2]));
        Expr r = Expr::binary("&&", std::move(lo), std::move(hi));
        r.span = out.span;
        return r;
      }
      case ExprKind::kCall:
        if (out.op == "SUBSTRING") out.op = "SUBSTR";
        if (auto unit = date_unit(out.op)) {
          if (params_.query_engine_type == QueryEngine::kVirtuoso) {
            return date_diff(out, *unit);
          }
          report("engine", "'" + out.op +
                               "(a - b)' needs the VIRTUOSO query engine");
        }
        return out;
      case ExprKind::kAggregate:
        if (out.op == "COUNT_DISTINCT") {
          out.op = "COUNT";
          out.distinct = true;
        }
        return out;
      case ExprKind::kIn:
        if (out.children.size() == 2 &&
            out.children[1].kind == ExprKind::kRange) {
          long long lo = std::stoll(out.children[1].children[0].op);
          long long hi = std::stoll(out.children[1].children[1].op);
          if (hi - lo >= kMaxRangeExpansion) {
            report("range", "range too large to expand");
            return out;
          }
          Expr value = std::move(out.children[0]);
          out.children.clear();
          out.children.push_back(std::move(value));
          for (long long v = lo; v <= hi; ++v) {
            out.children.push_back(Expr::integer(v));
          }
        }
        return out;
      case ExprKind::kName:
        return rewrite_name(std::move(out));
      case ExprKind::kValueScope:
        experimental("value scope");
        return out;
      default:
        return out;
    }
  }

  Expr rewrite_binary(Expr out) {
    const std::string& op = out.op;
    Expr& a = out.children[0];
    Expr& b = out.children[1];
    Expr r;
    if (op == "~") {
      r = Expr::call("REGEX", {std::move(a), std::move(b)});
    } else if (op == "~*") {
      r = Expr::call("REGEX",
                     {std::move(a), std::move(b), Expr::string_literal("i")});
    } else if (op == "LIKE") {
      if (b.kind == ExprKind::kLiteral &&
          b.literal_kind == LiteralKind::kString) {
        b = Expr::string_literal(like_to_regex(b.op));
      } else {
        report("like", "LIKE needs a string pattern");
      }
      r = Expr::call("REGEX", {std::move(a), std::move(b)});
    } else if (op == "?") {
      experimental("the 'a ? b' coalesce shorthand");
      r = Expr::call("COALESCE", {std::move(a), std::move(b)});
    } else if (op == "++") {
      r = Expr::call("CONCAT", {std::move(a), std::move(b)});
    } else {
      return out;
    }
    r.span = out.span;
    return r;
  }

  Expr rewrite_name(Expr out) {
    NameEntity& n = *out.name;
    if (!n.lang_tags.empty() && position_ == ExprPosition::kCondition) {
      Expr plain = out;
      plain.name->lang_tags.clear();
      plain.name->substring.reset();
      Expr lang = Expr::call("LANG", {std::move(plain)});
      if (n.lang_tags.size() == 1) {
        lang_conjuncts_.push_back(Expr::binary(
            "=", std::move(lang), Expr::string_literal(n.lang_tags.front())));
      } else {
        Expr in;
        in.kind = ExprKind::kIn;
        in.children.push_back(std::move(lang));
        for (const std::string& t : n.lang_tags) {
          in.children.push_back(Expr::string_literal(t));
        }
        lang_conjuncts_.push_back(std::move(in));
      }
      n.lang_tags.clear();
    }
    if (n.substring) {
      auto [first, second] = *n.substring;
      n.substring.reset();
      Expr start = Expr::integer(second ? first : 1);
      Expr length = Expr::integer(second ? *second : first);
      Expr r = Expr::call("SUBSTR", {out, std::move(start), std::move(length)});
      r.span = out.span;
      return r;
    }
    return out;
  }

  const Params& params_;
  ExprPosition position_;
  Diagnostics* diags_;
  std::vector<Expr> lang_conjuncts_;
};

}  // namespace

Expr desugar(const Expr& e, const Params& params, ExprPosition position,
             Diagnostics* diags) {
  return Desugarer(params, position, diags).run(e);
}

Expr apply_engine_transforms(const Expr& e, const Params& params) {
  if (params.query_engine_type != QueryEngine::kVirtuoso) return e;
  Expr out = e;
  for (Expr& c : out.children) c = apply_engine_transforms(c, params);
  if (out.kind != ExprKind::kCall) return out;
  if (auto unit = date_unit(out.op)) out = date_diff(out, *unit);
  if (out.op == "bif:datediff") {
    for (std::size_t i = 1; i < out.children.size(); ++i) {
      if (is_xsd_date(out.children[i])) {
        out.children[i] = Expr::call("xsd:dateTime", {out.children[i]});
      }
    }
  } else if (out.op == "SUBSTR") {
    out.op = "bif:substring";
  }
  return out;
}

}  // namespace vqc
