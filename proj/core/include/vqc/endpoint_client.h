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

// SPARQL 1.1 Protocol client and result table encodings.

#ifndef VQC_ENDPOINT_CLIENT_H_
#define VQC_ENDPOINT_CLIENT_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vqc {

enum class HttpMethod { kGet, kPostForm, kPostDirect };

struct BasicAuth {
  std::string user;
  std::string password;
};

struct EndpointConfig {
  std::string endpoint_url;
  HttpMethod http_method = HttpMethod::kPostDirect;
  std::optional<BasicAuth> auth;
  int timeout_seconds = 30;
  std::vector<std::pair<std::string, std::string>> headers;

  // Throws std::invalid_argument for a relative URL or a bad timeout.
  void validate() const;
};

enum class ValueKind { kIri, kLiteral, kBlank };

struct Cell {
  std::string value;
  ValueKind kind = ValueKind::kLiteral;
  std::optional<std::string> datatype;
  std::optional<std::string> lang;

  bool operator==(const Cell&) const = default;
};

struct ResultTable {
  std::vector<std::string> variables;
  // One slot per variable; unset means unbound.
  std::vector<std::vector<std::optional<Cell>>> rows;

  bool operator==(const ResultTable&) const = default;
};

// Network failure or timeout.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-2xx response.
class EndpointError : public std::runtime_error {
 public:
  EndpointError(int status, std::string body_excerpt);
  int status() const { return status_; }
  const std::string& body_excerpt() const { return body_excerpt_; }

 private:
  int status_;
  std::string body_excerpt_;
};

// Response that is not a valid SPARQL JSON results document.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sends one request (no retries) asking for application/sparql-results+json.
ResultTable execute_query(std::string_view query, const EndpointConfig& cfg);

ResultTable decode_results_json(std::string_view body);
std::string encode_results_json(const ResultTable& t);

enum class ResultFormat { kTable, kCsv, kJson };

// Throws std::invalid_argument for unknown names ("table", "csv", "json").
ResultFormat parse_result_format(std::string_view name);

// table: aligned text columns; csv: RFC 4180 with plain values; json: the
// SPARQL JSON results form. Unbound cells are empty.
std::string format_results(const ResultTable& t, ResultFormat fmt);

}  // namespace vqc

#endif  // VQC_ENDPOINT_CLIENT_H_
