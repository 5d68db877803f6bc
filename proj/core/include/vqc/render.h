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

// SPARQL text generation from the generation model.

#ifndef VQC_RENDER_H_
#define VQC_RENDER_H_

#include <string>

#include "vqc/diagnostics.h"
#include "vqc/gen_model.h"
#include "vqc/schema.h"

namespace vqc {

// PREFIX lines for the prefixes the query uses, the SELECT clause and the
// WHERE pattern assembled fragment by fragment, then the solution
// modifiers. An empty projection becomes SELECT * with a warning.
std::string render_sparql(const GenModel& g, const Schema& schema,
                          Diagnostics* diags = nullptr);

}  // namespace vqc

#endif  // VQC_RENDER_H_
