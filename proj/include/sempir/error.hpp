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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sempir {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ProblemSpec, FieldSpec or command configuration violates its invariants.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in prime field") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Raised by exact solvers when the system matrix is not full rank.
class SingularMatrix : public Error {
 public:
  SingularMatrix(std::size_t rank, std::size_t required)
      : Error("singular matrix: rank " + std::to_string(rank) + " < " + std::to_string(required)),
        rank_(rank),
        required_(required) {}

  std::size_t rank() const noexcept { return rank_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t rank_;
  std::size_t required_;
};

// The field cannot host a requested MDS code or random invertible matrix.
class FieldTooSmall : public Error {
 public:
  using Error::Error;
};

// Fewer than k coordinates were supplied to codeword completion.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Redundant data disagrees: a corrupted transcript or an implementation bug.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// V^-1 L (or a derived per-subset count) is not a nonnegative integer vector.
class InfeasiblePlan : public Error {
 public:
  struct Entry {
    std::size_t index;  // canonical 0-based message index, or subset mask for slot counts
    std::string value;  // exact rational rendering
  };

  InfeasiblePlan(std::string what, std::vector<Entry> offending, std::uint64_t lift)
      : Error(std::move(what)), offending_(std::move(offending)), lift_(lift) {}

  const std::vector<Entry>& offending() const noexcept { return offending_; }
  std::uint64_t lift_factor() const noexcept { return lift_; }

 private:
  std::vector<Entry> offending_;
  std::uint64_t lift_;
};

// Statistical audit asked to run with too few samples for meaningful p-values.
class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace sempir
