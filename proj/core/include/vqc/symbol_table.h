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

// Per-node name visibility. Each node maps the names usable there to one
// or more descriptions (kind, schema type, defining node and the scope
// path flags). Names not found here fall back to the schema.

#ifndef VQC_SYMBOL_TABLE_H_
#define VQC_SYMBOL_TABLE_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vqc/ast.h"
#include "vqc/diagnostics.h"
#include "vqc/expr.h"
#include "vqc/schema.h"

namespace vqc {

struct Params;

struct NameDescription {
  NameKind kind = NameKind::kUnresolvedName;
  std::optional<EntityRef> type;
  std::string context;     // id of the defining node
  std::string definition;  // id of the defining element
  int up_by_subquery = 0;
  bool down_by_subquery = false;
  bool up_by_optional = false;
  int distance_from_class = 0;
};

using NameMap = std::map<std::string, std::vector<NameDescription>>;

class SymbolTable {
 public:
  void add_node(const std::string& node_id);
  void add(const std::string& node_id, const std::string& name,
           NameDescription description);

  // Throws ResolutionError for an unknown node.
  const NameMap& visible_names(std::string_view node_id) const;
  const std::map<std::string, NameMap, std::less<>>& entries() const {
    return table_;
  }

  // Sets kind and type on every description of `definition`.
  void update_definition(std::string_view definition, NameKind kind,
                         const std::optional<EntityRef>& type);
  // Drops descriptions matching `pred`; empty name entries are removed.
  void remove_if(
      const std::function<bool(const std::string& node_id,
                               const std::string& name,
                               const NameDescription&)>& pred);

  bool defines_anywhere(std::string_view name) const;

 private:
  std::map<std::string, NameMap, std::less<>> table_;
};

// Which scoping row of the visibility rules a definition follows.
enum class NameCategory { kInstance, kAlias, kAggregate };

struct ScopeFlags {
  int up_by_subquery = 0;
  bool down_by_subquery = false;
  bool up_by_optional = false;
  int distance = 0;
};

// Visibility of a name defined at `def_node` when used at `use_node`.
// `selectable` tells whether an alias can be exported from a subquery
// (the defining field is selected there).
std::optional<ScopeFlags> scope_path(const Ast& ast, std::size_t def_node,
                                     std::size_t use_node,
                                     NameCategory category, bool selectable);

// Instance aliases, aggregate aliases, field aliases (unresolved) and
// implicit names of unaliased single-name fields, propagated to every
// node where they are visible.
SymbolTable build_initial_symbol_table(const Ast& ast);

struct CompletedAst {
  Ast ast;
  SymbolTable symbols;
};

// Parses, desugars and resolves every expression. Field definitions are
// classified on demand (property alias, bind alias, reference to alias)
// and their kinds/types written back into the table.
CompletedAst complete_ast(const Ast& ast, const Schema& schema,
                          const Params& params, Diagnostics& diags);

// JSON text: node id -> name -> descriptions.
std::string dump_symbol_table(const SymbolTable& st);

}  // namespace vqc

#endif  // VQC_SYMBOL_TABLE_H_
