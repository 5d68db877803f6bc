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

#include "vqc/endpoint_client.h"

#include <algorithm>
#include <sstream>

#include "httplib.h"
#include "json_util.h"

namespace vqc {
namespace {

using internal::Json;

constexpr std::size_t kExcerptLength = 200;
constexpr const char* kResultsMediaType = "application/sparql-results+json";

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;    // includes the query string, if any
};

Url split_url(const std::string& url) {
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw std::invalid_argument("endpoint URL must be absolute: " + url);
  }
  std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string cell_text(const std::optional<Cell>& c, bool decorate) {
  if (!c) return {};
  if (!decorate) return c->value;
  switch (c->kind) {
    case ValueKind::kIri:
      return "<" + c->value + ">";
    case ValueKind::kBlank:
      return "_:" + c->value;
    case ValueKind::kLiteral:
      if (c->lang) return c->value + "@" + *c->lang;
      return c->value;
  }
  return c->value;
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\r\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void EndpointConfig::validate() const {
  split_url(endpoint_url);
  if (timeout_seconds <= 0) {
    throw std::invalid_argument("timeout must be positive");
  }
}

EndpointError::EndpointError(int status, std::string body_excerpt)
    : std::runtime_error("endpoint returned HTTP " + std::to_string(status) +
                         (body_excerpt.empty() ? "" : ": " + body_excerpt)),
      status_(status),
      body_excerpt_(std::move(body_excerpt)) {}

ResultTable execute_query(std::string_view query, const EndpointConfig& cfg) {
  if (query.empty()) throw std::invalid_argument("empty query");
  cfg.validate();
  Url url = split_url(cfg.endpoint_url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(cfg.timeout_seconds, 0);
  client.set_read_timeout(cfg.timeout_seconds, 0);
  client.set_write_timeout(cfg.timeout_seconds, 0);
  if (cfg.auth) {
    client.set_basic_auth(cfg.auth->user, cfg.auth->password);
  }
  httplib::Headers headers{{"Accept", kResultsMediaType}};
  for (const auto& [k, v] : cfg.headers) headers.emplace(k, v);

  httplib::Result res;
  std::string q(query);
  switch (cfg.http_method) {
    case HttpMethod::kGet: {
      httplib::Params params{{"query", q}};
      res = client.Get(url.path, params, headers);
      break;
    }
    case HttpMethod::kPostForm: {
      httplib::Params params{{"query", q}};
      res = client.Post(url.path, headers, params);
      break;
    }
    case HttpMethod::kPostDirect:
      res = client.Post(url.path, headers, q, "application/sparql-query");
      break;
  }
  if (!res) {
    throw TransportError("request to " + cfg.endpoint_url +
                         " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw EndpointError(res->status, res->body.substr(0, kExcerptLength));
  }
  return decode_results_json(res->body);
}

ResultTable decode_results_json(std::string_view body) {
  Json j;
  try {
    j = Json::parse(body.begin(), body.end());
  } catch (const Json::parse_error& e) {
    throw DecodeError(std::string("malformed results: ") + e.what());
  }
  try {
    ResultTable t;
    for (const Json& v : j.at("head").at("vars")) {
      t.variables.push_back(v.get<std::string>());
    }
    for (const Json& b : j.at("results").at("bindings")) {
      std::vector<std::optional<Cell>> row(t.variables.size());
      for (std::size_t i = 0; i < t.variables.size(); ++i) {
        auto it = b.find(t.variables[i]);
        if (it == b.end()) continue;
        Cell c;
        std::string type = it->at("type").get<std::string>();
        c.value = it->at("value").get<std::string>();
        if (type == "uri") {
          c.kind = ValueKind::kIri;
        } else if (type == "bnode") {
          c.kind = ValueKind::kBlank;
        } else if (type == "literal" || type == "typed-literal") {
          c.kind = ValueKind::kLiteral;
        } else {
          throw DecodeError("unknown binding type '" + type + "'");
        }
        if (auto l = it->find("xml:lang"); l != it->end()) {
          c.lang = l->get<std::string>();
        }
        if (auto d = it->find("datatype"); d != it->end()) {
          c.datatype = d->get<std::string>();
        }
        row[i] = std::move(c);
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const Json::exception& e) {
    throw DecodeError(std::string("malformed results: ") + e.what());
  }
}

std::string encode_results_json(const ResultTable& t) {
  Json j;
  j["head"]["vars"] = t.variables;
  Json bindings = Json::array();
  for (const auto& row : t.rows) {
    Json b = Json::object();
    for (std::size_t i = 0; i < t.variables.size(); ++i) {
      if (!row[i]) continue;
      const Cell& c = *row[i];
      Json v;
      v["type"] = c.kind == ValueKind::kIri     ? "uri"
                  : c.kind == ValueKind::kBlank ? "bnode"
                                                : "literal";
      v["value"] = c.value;
      if (c.lang) v["xml:lang"] = *c.lang;
      if (c.datatype) v["datatype"] = *c.datatype;
      b[t.variables[i]] = std::move(v);
    }
    bindings.push_back(std::move(b));
  }
  j["results"]["bindings"] = std::move(bindings);
  return j.dump(2) + "\n";
}

ResultFormat parse_result_format(std::string_view name) {
  if (name == "table") return ResultFormat::kTable;
  if (name == "csv") return ResultFormat::kCsv;
  if (name == "json") return ResultFormat::kJson;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::string format_results(const ResultTable& t, ResultFormat fmt) {
  std::ostringstream os;
  switch (fmt) {
    case ResultFormat::kJson:
      return encode_results_json(t);
    case ResultFormat::kCsv:
      for (std::size_t i = 0; i < t.variables.size(); ++i) {
        os << (i ? "," : "") << csv_field(t.variables[i]);
      }
      os << "\r\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          os << (i ? "," : "") << csv_field(cell_text(row[i], false));
        }
        os << "\r\n";
      }
      return os.str();
    case ResultFormat::kTable: {
      std::vector<std::size_t> width;
      for (const std::string& v : t.variables) width.push_back(v.size());
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          width[i] = std::max(width[i], cell_text(row[i], true).size());
        }
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (i) os << " | ";
          os << cells[i];
          if (i + 1 < cells.size()) {
            os << std::string(width[i] - cells[i].size(), ' ');
          }
        }
        os << "\n";
      };
      line(t.variables);
      std::vector<std::string> rule;
      for (std::size_t w : width) rule.push_back(std::string(w, '-'));
      line(rule);
      for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(cell_text(c, true));
        line(cells);
      }
      return os.str();
    }
  }
  return {};
}

}  // namespace vqc
