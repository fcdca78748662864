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

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sempir {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "a/b", "a" and finite decimals such as "0.99"; exact.
Rational parse_rational(std::string_view text);

// "a/b", or "a" when the denominator is one.
std::string to_string(const Rational& r);

// Decimal rendering rounded half away from zero to `digits` places.
std::string to_decimal(const Rational& r, unsigned digits);

bool is_integer(const Rational& r);

// Checked narrowing; throws InvalidSpec when the value does not fit.
std::uint64_t to_u64(const BigInt& v);
std::uint64_t to_u64(const Rational& r);

}  // namespace sempir
