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

#include "sempir/rational.hpp"

#include <cctype>
#include <limits>

#include "sempir/error.hpp"

namespace sempir {

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return InvalidSpec("not an exact number: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw bad();
    BigInt v = 0;
    for (char ch : s) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw bad();
      v = v * 10 + (ch - '0');
    }
    return v;
  };
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational out;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw bad();
    out = Rational(parse_int(text.substr(0, slash)), den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = whole.empty() ? BigInt(0) : parse_int(whole);
    BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
    if (whole.empty() && frac.empty()) throw bad();
    out = Rational(w * scale + f, scale);
  } else {
    out = Rational(parse_int(text));
  }
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal(const Rational& r, unsigned digits) {
  BigInt scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  BigInt num = numerator(r);
  const BigInt den = denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    out += "." + std::string(digits - f.size(), '0') + f;
  }
  return out;
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw InvalidSpec("value " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

std::uint64_t to_u64(const Rational& r) {
  if (!is_integer(r)) throw InvalidSpec("value " + to_string(r) + " is not an integer");
  return to_u64(numerator(r));
}

}  // namespace sempir
