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

#include <ostream>

namespace sempir::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidSpec = 2,
  kInfeasible = 3,
  kDecodeFailure = 4,
  kAuditFailure = 5,
};

// Entry point of the `sempir` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sempir::cli
