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

#include <span>
#include <vector>

#include "sempir/gf.hpp"
#include "sempir/runtime.hpp"
#include "sempir/scheme.hpp"

namespace sempir::decode {

// Row-valued form: each answer is a row of `width` elements (width 1 for
// plain values). Returns a U_theta x width matrix of W'_theta rows.
gf::Matrix execute_rows(const scheme::DecodingScript& script, std::span<const gf::Matrix> answers,
                        const scheme::MdsAllocation& allocation, const gf::Field& field);

// W'_theta for one iteration from the per-server answers.
std::vector<gf::Element> execute_script(const scheme::DecodingScript& script,
                                        std::span<const std::vector<gf::Element>> answers,
                                        const scheme::MdsAllocation& allocation, const gf::Field& field);

// W_theta block of one iteration: S_theta^-1 W'_theta.
std::vector<gf::Element> recover_iteration(const scheme::DecodingScript& script,
                                           std::span<const std::vector<gf::Element>> answers,
                                           const scheme::MdsAllocation& allocation,
                                           const scheme::SessionSecrets& secrets, const gf::Field& field);

// Unscrambles every iteration. Uses only answers, the public layout and secrets.
runtime::RecoveredMessage recover_message(const runtime::Transcript& transcript,
                                          std::span<const scheme::SessionSecrets> secrets);

}  // namespace sempir::decode
