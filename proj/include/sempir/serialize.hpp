/*
 * Copyright 2026 The sempir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>

#include "json.hpp"
#include "sempir/audit.hpp"
#include "sempir/params.hpp"
#include "sempir/runtime.hpp"

namespace sempir::serialize {

// Documents use sorted keys; integers are written as decimal strings and
// message indices in caller order, 1-based.
using Json = nlohmann::json;

Json to_json(const params::ProblemSpec& spec);
Json to_json(const params::ProblemSpec& spec, const params::SubpacketPlan& plan);
Json to_json(const params::Comparison& c);
Json to_json(const runtime::Transcript& t);
Json to_json(const params::ProblemSpec& spec, const audit::AuditReport& report);

// Two-space indented text with a trailing newline.
std::string dump(const Json& doc);

}  // namespace sempir::serialize
