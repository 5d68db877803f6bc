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

#ifndef VQC_DIAGNOSTICS_H_
#define VQC_DIAGNOSTICS_H_

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vqc {

enum class Severity { kWarning, kError };

// A single compiler finding. `element` is the document id of the node,
// link or compartment the finding is about (may be empty).
struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  std::string element;
};

class Diagnostics {
 public:
  void error(std::string code, std::string message, std::string element = {});
  void warning(std::string code, std::string message,
               std::string element = {});
  void add(Diagnostic d) { items_.push_back(std::move(d)); }
  void append(const Diagnostics& other);

  bool has_errors() const;
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<Diagnostic>& items() const { return items_; }

  // True if some diagnostic carries the given code.
  bool contains(std::string_view code) const;

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<Diagnostic> items_;
};

std::ostream& operator<<(std::ostream& os, const Diagnostic& d);
std::string to_string(const Diagnostic& d);

// Malformed input document (JSON syntax, unknown keys or enum values).
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, std::size_t byte_position = 0)
      : std::runtime_error(message), byte_position_(byte_position) {}
  std::size_t byte_position() const { return byte_position_; }

 private:
  std::size_t byte_position_;
};

// Structurally valid input that violates a load-time invariant.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Name resolution failure that cannot be deferred (e.g. unknown prefix).
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Compilation cannot continue; carries the accumulated diagnostics.
class CompileError : public std::runtime_error {
 public:
  explicit CompileError(Diagnostics diagnostics);
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

}  // namespace vqc

#endif  // VQC_DIAGNOSTICS_H_
