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

// SPARQL variable names for node instances, fields, aggregations and the
// property navigations inside expressions.

#ifndef VQC_VARIABLES_H_
#define VQC_VARIABLES_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "vqc/ast.h"
#include "vqc/diagnostics.h"
#include "vqc/symbol_table.h"

namespace vqc {

class VariableMap {
 public:
  // Variable (without '?') or constant term bound to a key. Keys are
  // element ids (node, field, aggregation, link) or usage keys.
  std::optional<std::string> get(std::string_view key) const;
  bool is_constant(std::string_view key) const;
  // "?name" for variables, the term itself for constants. Throws
  // ResolutionError for unknown keys.
  std::string term(std::string_view key) const;

  void set(const std::string& key, const std::string& name);
  void set_constant(const std::string& key, const std::string& term);
  bool used(std::string_view name) const { return used_.count(name) > 0; }
  void reserve(const std::string& name) { used_.insert(name); }
  // `base` or base_1, base_2, ... whichever is free; marks it used.
  std::string fresh(std::string_view base);

  const std::set<std::string, std::less<>>& used_names() const {
    return used_;
  }
  void set_used_names(std::set<std::string, std::less<>> names) {
    used_ = std::move(names);
  }
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return vars_;
  }

 private:
  std::map<std::string, std::string, std::less<>> vars_;
  std::set<std::string, std::less<>> constants_;
  std::set<std::string, std::less<>> used_;
};

// Key of a property navigation inside one element; identical path texts in
// one element share the key.
std::string usage_key(std::string_view element_id, const NameEntity& name);
// Key of the label-service variable of a field.
std::string label_key(std::string_view field_id);

// Replaces characters that cannot appear in a SPARQL variable name.
std::string sanitize_variable(std::string_view text);

// Explicit names first, then automatic names in document order. Alias
// references whose visible definitions map to different variables are
// reported as errors.
VariableMap assign_variables(const Ast& ast, const SymbolTable& st,
                             Diagnostics& diags);

}  // namespace vqc

#endif  // VQC_VARIABLES_H_
