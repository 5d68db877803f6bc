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

#include "vqc/render.h"

#include <algorithm>
#include <set>

#include "vqc/sparql_tokens.h"

namespace vqc {
namespace {

constexpr std::size_t kInlineWidth = 72;

// Pattern text as indented lines.
class Lines {
 public:
  void add(const std::string& line) { lines_.push_back(line); }
  void add_all(const std::vector<std::string>& lines) {
    for (const std::string& l : lines) add(l);
  }
  // open + inner + close; short single-line groups stay on one line.
  void group(const std::string& open, const Lines& inner,
             const std::string& close) {
    if (inner.lines_.size() == 1 &&
        open.size() + inner.lines_.front().size() + close.size() <
            kInlineWidth) {
      add(open + inner.lines_.front() + close);
      return;
    }
    add(open);
    for (const std::string& l : inner.lines_) add("  " + l);
    add(close);
  }
  void append(const Lines& other) { add_all(other.lines_); }
  bool empty() const { return lines_.empty(); }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::vector<std::string> lines_;
};

class Renderer {
 public:
  Renderer(const GenModel& g, Diagnostics* diags) : g_(g), diags_(diags) {}

  std::string query() {
    const GenNode& root = g_.root();
    Lines body = block_body(root.index);
    std::string out = "SELECT " + std::string(root.distinct ? "DISTINCT " : "") +
                      projection(root) + " WHERE{\n";
    for (const std::string& l : body.lines()) out += "  " + l + "\n";
    out += "}";
    for (const std::string& m : modifiers(root)) out += "\n" + m;
    return out + "\n";
  }

 private:
  const GenNode& node(std::size_t i) const { return g_.nodes.at(i); }

  std::string projection(const GenNode& r) {
    const SelectBlock& s = r.block_select;
    std::string out;
    for (const std::string& v : s.simple_variables) out += v + " ";
    for (const AggregateVariable& a : s.aggregate_variables) {
      out += "(" + a.expression + " AS " + a.name + ") ";
    }
    for (const std::string& v : s.label_variables) out += v + " ";
    if (out.empty()) {
      if (diags_ != nullptr) {
        diags_->warning("select", "nothing is selected; using SELECT *", r.id);
      }
      return "*";
    }
    out.pop_back();
    return out;
  }

  std::vector<std::string> modifiers(const GenNode& r) {
    std::vector<std::string> out;
    std::vector<std::string> groups = r.group_by.groups;
    groups.insert(groups.end(), r.implicit_group_by.begin(),
                  r.implicit_group_by.end());
    if (!groups.empty()) {
      std::string s = "GROUP BY";
      for (const std::string& x : groups) s += " " + x;
      out.push_back(s);
    }
    if (!r.order_by.clauses.empty()) {
      std::string s = "ORDER BY";
      for (const std::string& x : r.order_by.clauses) s += " " + x;
      out.push_back(s);
    }
    if (r.offset) out.push_back("OFFSET " + std::to_string(*r.offset));
    if (r.limit) out.push_back("LIMIT " + std::to_string(*r.limit));
    return out;
  }

  // Nodes joined to `head` by required join links, in document order.
  std::vector<std::size_t> fragment_nodes(std::size_t head) const {
    std::vector<std::size_t> out{head};
    for (std::size_t k = 0; k < out.size(); ++k) {
      const GenNode& n = node(out[k]);
      std::vector<std::size_t> inner;
      for (std::size_t c : n.children) {
        if (node(c).edge == EdgeType::kRequired) inner.push_back(c);
      }
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                 inner.begin(), inner.end());
    }
    return out;
  }

  bool needs_introduction(const GenNode& n) const {
    if (n.node_type != NodeType::kData || !n.class_definition.empty() ||
        !n.link_definition.empty() || n.class_instance.empty() ||
        n.class_instance.front() != '?') {
      return false;
    }
    // Nodes sharing the parent's instance are introduced by the parent.
    return !n.parent || node(*n.parent).class_instance != n.class_instance;
  }

  void attribute(const AttributeDefinition& a, Lines& out) {
    if (a.local_subquery) {
      Lines inner;
      inner.add(*a.local_subquery);
      if (a.require_values) {
        out.append(inner);
      } else {
        out.group("OPTIONAL{", inner, "}");
      }
      return;
    }
    Lines parts;
    parts.add_all(a.triple_patterns);
    parts.add_all(a.filters);
    parts.add_all(a.bind_clauses);
    if (a.bound_clause) parts.add(*a.bound_clause);
    if (a.values_clause) parts.add(*a.values_clause);
    if (parts.empty()) return;
    if (a.require_values || a.triple_patterns.empty()) {
      out.append(parts);
    } else {
      out.group("OPTIONAL{", parts, "}");
    }
  }

  Lines fragment(std::size_t head) {
    Lines out;
    std::vector<std::size_t> members = fragment_nodes(head);
    std::set<const AttributeDefinition*> done;

    // Phase 1: structure of the fragment.
    for (std::size_t i : members) {
      const GenNode& n = node(i);
      if (!n.link_definition.empty()) out.add(n.link_definition);
      if (!n.class_definition.empty()) out.add(n.class_definition);
      out.add_all(n.reference_links);
      out.add_all(n.filters_as_triples);
    }
    for (std::size_t i : members) {
      const GenNode& n = node(i);
      if (!needs_introduction(n)) continue;
      for (const AttributeDefinition& a : n.attributes) {
        if (a.require_values && !a.triple_patterns.empty()) {
          attribute(a, out);
          done.insert(&a);
          break;
        }
      }
    }
    const GenNode& h = node(head);
    if (h.edge == EdgeType::kSubquery || !h.parent) out.add_all(h.grounding);

    // Phase 2: subqueries.
    for (std::size_t i : members) {
      const GenNode& n = node(i);
      for (std::size_t c : n.children) {
        const GenNode& ch = node(c);
        if (ch.edge != EdgeType::kSubquery || ch.existence_check ||
            ch.mode == LinkMode::kNegated) {
          continue;
        }
        Lines sub = subquery(c);
        if (ch.mode == LinkMode::kOptional) {
          out.group("OPTIONAL{", sub, "}");
        } else {
          out.append(sub);
        }
      }
      if (n.full_sparql && n.full_sparql_is_subquery) {
        Lines text;
        text.add(*n.full_sparql);
        out.group("{", text, "}");
      }
    }

    // Phase 3: depth-first traversal.
    traverse(head, head, members, done, out);
    return out;
  }

  void traverse(std::size_t i, std::size_t head,
                const std::vector<std::size_t>& members,
                const std::set<const AttributeDefinition*>& done, Lines& out) {
    const GenNode& n = node(i);
    for (std::size_t c : n.children) {
      if (node(c).edge == EdgeType::kRequired) {
        traverse(c, head, members, done, out);
      }
    }
    std::vector<std::size_t> branches;
    for (std::size_t c : n.children) {
      if (node(c).edge == EdgeType::kUnion) branches.push_back(c);
    }
    if (!branches.empty()) union_group(branches, out);
    for (std::size_t c : n.children) {
      if (node(c).edge == EdgeType::kOptional) {
        out.group("OPTIONAL{", fragment(c), "}");
      }
    }
    for (const AttributeDefinition& a : n.attributes) {
      if (done.count(&a) == 0) attribute(a, out);
    }
    if (n.full_sparql && !n.full_sparql_is_subquery) out.add(*n.full_sparql);
    for (const FilterDefinition& f : n.filters) out.add_all(f.base_triples);
    if (i == head) {
      for (std::size_t m : members) filters(m, out);
    }
    for (std::size_t c : n.children) {
      const GenNode& ch = node(c);
      if (ch.edge == EdgeType::kSubquery && ch.mode == LinkMode::kNegated &&
          !ch.existence_check) {
        out.group("MINUS{", block_body(c), "}");
      }
    }
    if (i == head) out.add_all(n.aggregation_base);
  }

  void union_group(const std::vector<std::size_t>& branches, Lines& out) {
    for (std::size_t k = 0; k < branches.size(); ++k) {
      Lines alt = fragment(branches[k]);
      out.group(k == 0 ? "{" : "UNION {", alt, "}");
    }
  }

  void filters(std::size_t i, Lines& out) {
    const GenNode& n = node(i);
    for (const FilterDefinition& f : n.filters) out.add(f.filter_text);
    for (const std::string& t : n.negated_reference_links) {
      out.add("FILTER NOT EXISTS{" + t + "}");
    }
    for (std::size_t c : n.children) {
      const GenNode& ch = node(c);
      if (ch.edge == EdgeType::kNegated) {
        out.group("FILTER NOT EXISTS{", fragment(c), "}");
      } else if (ch.edge == EdgeType::kSubquery && ch.existence_check) {
        out.group(ch.mode == LinkMode::kNegated ? "FILTER NOT EXISTS{"
                                                : "FILTER EXISTS{",
                  block_body(c), "}");
      }
    }
  }

  // Pattern of a block: its head fragment plus the triples needed by the
  // grouping and ordering expressions and the label service.
  Lines block_body(std::size_t r) {
    Lines out = fragment(r);
    const GenNode& root = node(r);
    for (const std::string& t : root.group_by.triple_patterns) {
      out.add("OPTIONAL{" + t + "}");
    }
    for (const std::string& t : root.order_by.triple_patterns) {
      out.add("OPTIONAL{" + t + "}");
    }
    Lines labels;
    for (std::size_t i = 0; i < g_.nodes.size(); ++i) {
      if (block_of(i) != r) continue;
      labels.add_all(node(i).label_triples);
    }
    if (!labels.empty()) {
      Lines service;
      service.add("bd:serviceParam wikibase:language \"[AUTO_LANGUAGE],en\".");
      service.append(labels);
      out.group("SERVICE wikibase:label {", service, "}");
    }
    return out;
  }

  std::size_t block_of(std::size_t i) const {
    while (node(i).parent && node(i).edge != EdgeType::kSubquery) {
      i = *node(i).parent;
    }
    return i;
  }

  Lines subquery(std::size_t r) {
    const GenNode& root = node(r);
    Lines body = block_body(r);
    std::string open = "{SELECT " + std::string(root.distinct ? "DISTINCT " : "") +
                       projection(root) + " WHERE{";
    std::string close = "}";
    for (const std::string& m : modifiers(root)) close += " " + m;
    close += "}";
    Lines out;
    out.add(open);
    for (const std::string& l : body.lines()) out.add("  " + l);
    out.add(close);
    return out;
  }

  const GenModel& g_;
  Diagnostics* diags_;
};

}  // namespace

std::string render_sparql(const GenModel& g, const Schema& schema,
                          Diagnostics* diags) {
  if (g.nodes.empty()) return {};
  std::string body = Renderer(g, diags).query();
  std::string prefixes;
  for (const std::string& p : used_prefixes(body)) {
    auto iri = schema.namespace_iri(p);
    if (!iri) {
      if (diags != nullptr) {
        diags->error("prefix", "prefix '" + p + "' is not declared");
      }
      continue;
    }
    prefixes += "PREFIX " + p + ": <" + *iri + ">\n";
  }
  return prefixes + body;
}

}  // namespace vqc
