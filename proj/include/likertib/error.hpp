// Copyright 2026 The likertib Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace likertib {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (shape, range, count).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A statistic is undefined for the given input (e.g. 0/0).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Matrix is singular or numerically indistinguishable from singular.
/// `indices` holds the columns implicated in the dependency.
class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& what, std::vector<std::size_t> indices)
      : Error(what), indices_(std::move(indices)) {}
  const std::vector<std::size_t>& indices() const { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// Statistic can be computed but is not trustworthy (e.g. n <= p for
/// Bartlett's test). Callers usually downgrade this to a warning.
class UnreliableStatistic : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV input; `line` is 1-based.
class CsvError : public Error {
 public:
  enum class Kind { io, header, duplicate_item, non_integer, out_of_range, extra_cells, no_rows };

  CsvError(Kind kind, const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}
  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

}  // namespace likertib
