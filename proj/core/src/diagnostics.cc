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

#include "vqc/diagnostics.h"

#include <algorithm>
#include <sstream>

namespace vqc {

void Diagnostics::error(std::string code, std::string message,
                        std::string element) {
  items_.push_back({Severity::kError, std::move(code), std::move(message),
                    std::move(element)});
}

void Diagnostics::warning(std::string code, std::string message,
                          std::string element) {
  items_.push_back({Severity::kWarning, std::move(code), std::move(message),
                    std::move(element)});
}

void Diagnostics::append(const Diagnostics& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

bool Diagnostics::has_errors() const {
  return std::any_of(items_.begin(), items_.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kError;
  });
}

bool Diagnostics::contains(std::string_view code) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  os << (d.severity == Severity::kError ? "error" : "warning") << "["
     << d.code << "]";
  if (!d.element.empty()) os << " at " << d.element;
  return os << ": " << d.message;
}

std::string to_string(const Diagnostic& d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

namespace {

std::string summarize(const Diagnostics& diagnostics) {
  std::ostringstream os;
  os << "compilation failed";
  for (const Diagnostic& d : diagnostics) {
    if (d.severity == Severity::kError) {
      os << "; " << d;
    }
  }
  return os.str();
}

}  // namespace

CompileError::CompileError(Diagnostics diagnostics)
    : std::runtime_error(summarize(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace vqc
