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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sempir::gf {

// An element of the prime field; always reduced into [0, p).
struct Element {
  std::uint32_t value = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(Element, Element) = default;
};

enum class Op { add, sub, mul, div };

bool is_prime(std::uint64_t n);

// Prime field F_p with 2 <= p < 2^31.
class Field {
 public:
  static constexpr std::uint32_t kDefaultModulus = 65537;

  explicit Field(std::uint32_t modulus = kDefaultModulus);

  std::uint32_t modulus() const noexcept { return p_; }

  Element element(std::uint64_t v) const noexcept { return Element(static_cast<std::uint32_t>(v % p_)); }
  Element element_signed(std::int64_t v) const noexcept;

  Element add(Element a, Element b) const noexcept {
    std::uint32_t s = a.value + b.value;
    return Element(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const noexcept {
    return Element(a.value >= b.value ? a.value - b.value : a.value + p_ - b.value);
  }
  Element neg(Element a) const noexcept { return Element(a.value == 0 ? 0 : p_ - a.value); }
  Element mul(Element a, Element b) const noexcept {
    return Element(static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p_));
  }
  Element pow(Element a, std::uint64_t e) const noexcept;
  Element inv(Element a) const;  // throws DivisionByZero for 0
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element apply(Op op, Element a, Element b) const;

  // Number of products (p-1)^2 that can be summed into a uint64 holding a
  // value below p without overflow. Drives deferred reduction in kernels.
  std::uint64_t lazy_budget() const noexcept { return budget_; }

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
  std::uint64_t budget_;
};

// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Element> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Element& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<const Element> data() const noexcept { return data_; }

  // Rows [first, first + count) as a new matrix.
  Matrix row_block(std::size_t first, std::size_t count) const;
  // The listed rows, in order.
  Matrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

Element dot(const Field& f, std::span<const Element> a, std::span<const Element> b);

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
std::vector<Element> multiply(const Field& f, const Matrix& a, std::span<const Element> x);

// Row rank by exact elimination.
std::size_t rank(const Field& f, const Matrix& a);

// Pivot columns of the row echelon form, ascending. The rank of the first c
// columns equals the number of pivots below c.
std::vector<std::size_t> pivot_columns(const Field& f, const Matrix& a);

// Solves A x = b for square full-rank A. Throws SingularMatrix with the rank found.
std::vector<Element> solve(const Field& f, const Matrix& a, std::span<const Element> b);
Matrix solve(const Field& f, const Matrix& a, const Matrix& b);

Matrix inverse(const Field& f, const Matrix& a);

}  // namespace sempir::gf
