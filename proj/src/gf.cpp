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

#include "sempir/gf.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "sempir/error.hpp"

namespace sempir::gf {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128{a} * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Dense uint64 working copy of [A | B] for elimination with deferred reduction.
// Every entry of a row that has not yet been chosen as pivot stays below
// p + pending * (p-1)^2, where pending counts elimination steps since the last
// full reduction.
class Workspace {
 public:
  Workspace(const Field& f, const Matrix& a, const Matrix* b)
      : f_(f), p_(f.modulus()), rows_(a.rows()), left_(a.cols()), width_(a.cols() + (b ? b->cols() : 0)),
        w_(rows_ * width_) {
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t* dst = row(r);
      for (std::size_t c = 0; c < left_; ++c) dst[c] = a(r, c).value;
      if (b) {
        for (std::size_t c = 0; c < b->cols(); ++c) dst[left_ + c] = (*b)(r, c).value;
      }
    }
  }

  std::uint64_t* row(std::size_t r) { return w_.data() + r * width_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  // Reduces to row echelon form with unit pivots; returns the rank. Pivot
  // choice is the first row holding a nonzero entry in the column.
  std::size_t forward() {
    const std::uint64_t budget = f_.lazy_budget();
    std::uint64_t pending = 0;
    std::vector<std::uint32_t> pivot(width_);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < left_ && rank < rows_; ++c) {
      std::size_t sel = rows_;
      for (std::size_t r = rank; r < rows_; ++r) {
        std::uint64_t& x = row(r)[c];
        x %= p_;
        if (x != 0) {
          sel = r;
          break;
        }
      }
      if (sel == rows_) continue;
      if (sel != rank) std::swap_ranges(row(sel), row(sel) + width_, row(rank));

      std::uint64_t* pr = row(rank);
      const std::uint64_t scale = f_.inv(Element(static_cast<std::uint32_t>(pr[c]))).value;
      for (std::size_t j = c; j < width_; ++j) {
        pr[j] = pr[j] % p_ * scale % p_;
        pivot[j] = static_cast<std::uint32_t>(pr[j]);
      }
      const std::uint32_t* pv = pivot.data();
      for (std::size_t r = rank + 1; r < rows_; ++r) {
        std::uint64_t* rr = row(r);
        const std::uint64_t x = rr[c] % p_;
        if (x == 0) continue;
        const std::uint64_t g = p_ - x;
        for (std::size_t j = c; j < width_; ++j) rr[j] += g * pv[j];
      }
      pivots_.push_back(c);
      ++rank;
      if (++pending == budget) {
        for (std::size_t r = rank; r < rows_; ++r) {
          std::uint64_t* rr = row(r);
          for (std::size_t j = 0; j < width_; ++j) rr[j] %= p_;
        }
        pending = 0;
      }
    }
    return rank;
  }

  // After forward() on a square full-rank system: back-substitutes the
  // augmented columns and returns the solution block.
  Matrix back_substitute() {
    const std::size_t n = left_;
    const std::size_t m = width_ - left_;
    const std::uint64_t budget = f_.lazy_budget();
    std::vector<std::uint64_t> x(n * m);
    std::vector<std::uint64_t> acc(m);
    for (std::size_t i = n; i-- > 0;) {
      const std::uint64_t* ri = row(i);
      for (std::size_t k = 0; k < m; ++k) acc[k] = ri[left_ + k];
      std::uint64_t pending = 0;
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint64_t a = ri[j];
        if (a == 0) continue;
        const std::uint64_t g = p_ - a;
        const std::uint64_t* xj = x.data() + j * m;
        for (std::size_t k = 0; k < m; ++k) acc[k] += g * xj[k];
        if (++pending == budget) {
          for (auto& v : acc) v %= p_;
          pending = 0;
        }
      }
      for (std::size_t k = 0; k < m; ++k) x[i * m + k] = acc[k] % p_;
    }
    std::vector<Element> out(n * m);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Element(static_cast<std::uint32_t>(x[i]));
    return Matrix(n, m, std::move(out));
  }

 private:
  const Field& f_;
  std::uint64_t p_;
  std::size_t rows_;
  std::size_t left_;
  std::size_t width_;
  std::vector<std::uint64_t> w_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit inputs.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(std::uint32_t modulus) : p_(modulus) {
  if (modulus >= (1u << 31)) throw InvalidSpec("field modulus must be below 2^31, got " + std::to_string(modulus));
  if (!is_prime(modulus)) throw InvalidSpec("field modulus must be prime, got " + std::to_string(modulus));
  const std::uint64_t sq = std::uint64_t{p_ - 1} * (p_ - 1);
  budget_ = (std::numeric_limits<std::uint64_t>::max() - p_) / sq;
}

Element Field::element_signed(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Element(static_cast<std::uint32_t>(r));
}

Element Field::pow(Element a, std::uint64_t e) const noexcept {
  return Element(static_cast<std::uint32_t>(powmod64(a.value, e, p_)));
}

Element Field::inv(Element a) const {
  if (a.value == 0) throw DivisionByZero();
  return pow(a, p_ - 2);
}

Element Field::apply(Op op, Element a, Element b) const {
  switch (op) {
    case Op::add:
      return add(a, b);
    case Op::sub:
      return sub(a, b);
    case Op::mul:
      return mul(a, b);
    case Op::div:
      return div(a, b);
  }
  throw InvalidSpec("unknown field operation");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Element> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("matrix data size does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Element(1);
  return m;
}

Matrix Matrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw DimensionMismatch("row block out of range");
  Matrix out(count, cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_, out.data_.begin());
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw DimensionMismatch("row index out of range");
    std::ranges::copy(row(rows[i]), out.row(i).begin());
  }
  return out;
}

Element dot(const Field& f, std::span<const Element> a, std::span<const Element> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product of unequal lengths");
  const std::uint64_t p = f.modulus();
  const std::uint64_t budget = f.lazy_budget();
  std::uint64_t acc = 0;
  std::uint64_t pending = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::uint64_t{a[i].value} * b[i].value;
    if (++pending == budget) {
      acc %= p;
      pending = 0;
    }
  }
  return Element(static_cast<std::uint32_t>(acc % p));
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  const std::uint64_t p = f.modulus();
  const std::uint64_t budget = f.lazy_budget();
  Matrix out(a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::ranges::fill(acc, 0);
    std::uint64_t pending = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t aik = a(i, k).value;
      if (aik == 0) continue;
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < bk.size(); ++j) acc[j] += aik * bk[j].value;
      if (++pending == budget) {
        for (auto& v : acc) v %= p;
        pending = 0;
      }
    }
    auto dst = out.row(i);
    for (std::size_t j = 0; j < acc.size(); ++j) dst[j] = Element(static_cast<std::uint32_t>(acc[j] % p));
  }
  return out;
}

std::vector<Element> multiply(const Field& f, const Matrix& a, std::span<const Element> x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  std::vector<Element> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(f, a.row(i), x);
  return out;
}

std::size_t rank(const Field& f, const Matrix& a) {
  Workspace ws(f, a, nullptr);
  return ws.forward();
}

std::vector<std::size_t> pivot_columns(const Field& f, const Matrix& a) {
  Workspace ws(f, a, nullptr);
  ws.forward();
  return ws.pivots();
}

Matrix solve(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) throw DimensionMismatch("solve requires a square matrix");
  if (b.rows() != a.rows()) throw DimensionMismatch("right-hand side row count mismatch");
  Workspace ws(f, a, &b);
  const std::size_t r = ws.forward();
  if (r < a.rows()) throw SingularMatrix(r, a.rows());
  return ws.back_substitute();
}

std::vector<Element> solve(const Field& f, const Matrix& a, std::span<const Element> b) {
  Matrix rhs(b.size(), 1, std::vector<Element>(b.begin(), b.end()));
  Matrix x = solve(f, a, rhs);
  return {x.data().begin(), x.data().end()};
}

Matrix inverse(const Field& f, const Matrix& a) { return solve(f, a, Matrix::identity(a.rows())); }

}  // namespace sempir::gf
