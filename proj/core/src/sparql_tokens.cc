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

#include "vqc/sparql_tokens.h"

#include <algorithm>
#include <cctype>

#include "vqc/diagnostics.h"

namespace vqc {
namespace {

bool is_name_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || c == '.' || c == ':' ||
         c == '%' || u >= 0x80;
}

bool is_iri_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u > 0x20 && c != '<' && c != '>' && c != '"' && c != '{' &&
         c != '}' && c != '|' && c != '^' && c != '`' && c != '\\';
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::vector<SparqlToken> tokenize_sparql(std::string_view text) {
  std::vector<SparqlToken> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto push = [&](SparqlTokenKind k, std::size_t b, std::size_t e) {
    out.push_back({k, std::string(text.substr(b, e - b))});
  };
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    std::size_t b = i;
    if (c == '<') {
      std::size_t j = i + 1;
      while (j < n && is_iri_char(text[j])) ++j;
      if (j < n && text[j] == '>') {
        push(SparqlTokenKind::kIri, b, j + 1);
        i = j + 1;
        continue;
      }
    }
    if (c == '"' || c == '\'') {
      bool triple = text.substr(i, 3) == std::string(3, c);
      std::size_t j = i + (triple ? 3 : 1);
      for (;;) {
        if (j >= n) throw FormatError("unterminated string literal", b);
        if (text[j] == '\\') {
          j += 2;
          continue;
        }
        if (triple ? text.substr(j, 3) == std::string(3, c) : text[j] == c) {
          j += triple ? 3 : 1;
          break;
        }
        if (!triple && text[j] == '\n') {
          throw FormatError("line break in string literal", b);
        }
        ++j;
      }
      push(SparqlTokenKind::kString, b, j);
      i = j;
      continue;
    }
    if ((c == '?' || c == '$') && i + 1 < n &&
        (std::isalnum(static_cast<unsigned char>(text[i + 1])) ||
         text[i + 1] == '_')) {
      std::size_t j = i + 1;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                       text[j] == '_' ||
                       static_cast<unsigned char>(text[j]) >= 0x80)) {
        ++j;
      }
      push(SparqlTokenKind::kVariable, b, j);
      i = j;
      continue;
    }
    if (c == '@' && i + 1 < n && std::isalpha(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '-')) ++j;
      push(SparqlTokenKind::kLangTag, b, j);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < n && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      if (j < n && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) {
          j = k;
          while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        }
      }
      push(SparqlTokenKind::kNumber, b, j);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
        static_cast<unsigned char>(c) >= 0x80) {
      std::size_t j = i;
      while (j < n && is_name_char(text[j])) ++j;
      while (j > i + 1 && text[j - 1] == '.') --j;  // statement terminator
      std::string_view w = text.substr(i, j - i);
      push(w.find(':') != std::string_view::npos ? SparqlTokenKind::kPrefixedName
                                                 : SparqlTokenKind::kWord,
           b, j);
      i = j;
      continue;
    }
    static const char* kMulti[] = {"^^", "&&", "||", "!=", "<=", ">="};
    bool matched = false;
    for (const char* m : kMulti) {
      if (text.substr(i, 2) == m) {
        push(SparqlTokenKind::kPunct, b, i + 2);
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    push(SparqlTokenKind::kPunct, b, i + 1);
    ++i;
  }
  return out;
}

std::vector<std::string> token_stream(std::string_view text) {
  std::vector<std::string> out;
  for (const SparqlToken& t : tokenize_sparql(text)) {
    switch (t.kind) {
      case SparqlTokenKind::kWord:
        out.push_back(t.text == "a" ? t.text : upper(t.text));
        break;
      case SparqlTokenKind::kVariable:
        out.push_back("?" + t.text.substr(1));
        break;
      default:
        out.push_back(t.text);
    }
  }
  return out;
}

bool tokens_equal(std::string_view a, std::string_view b) {
  return token_stream(a) == token_stream(b);
}

bool contains_tokens(std::string_view haystack, std::string_view needle) {
  std::vector<std::string> h = token_stream(haystack);
  std::vector<std::string> n = token_stream(needle);
  return std::search(h.begin(), h.end(), n.begin(), n.end()) != h.end();
}

std::set<std::string> used_prefixes(std::string_view text) {
  std::set<std::string> out;
  std::vector<SparqlToken> tokens = tokenize_sparql(text);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const SparqlToken& t = tokens[i];
    if (t.kind != SparqlTokenKind::kPrefixedName) continue;
    if (i > 0 && tokens[i - 1].kind == SparqlTokenKind::kWord &&
        upper(tokens[i - 1].text) == "PREFIX") {
      continue;
    }
    out.insert(t.text.substr(0, t.text.find(':')));
  }
  return out;
}

}  // namespace vqc
