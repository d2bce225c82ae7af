// Copyright 2026 The logchart Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "logchart/coeff.hpp"

namespace logchart {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  // Each inner vector becomes one column.
  static IntMatrix from_columns(const std::vector<std::vector<BigInt>>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<BigInt> column(std::size_t j) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  std::vector<BigInt> apply(const std::vector<BigInt>& v) const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // Fraction-free (Bareiss) determinant of a square matrix.
  BigInt determinant() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

/// U * A * W = D with U, W unimodular, D diagonal with positive entries
/// d_1 | d_2 | ... | d_rank followed by zeros. The inverses are tracked
/// alongside so callers never invert.
struct SnfResult {
  IntMatrix u, u_inv, d, w, w_inv;
  std::size_t rank = 0;
  std::vector<BigInt> invariants;  // d_1..d_rank
};

SnfResult smith_normal_form(const IntMatrix& a);

// Inverse of a square matrix with determinant +-1; InvalidArgument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

// Z-basis (as columns of length a.cols()) of {x : a x = 0}.
std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& a);

}  // namespace logchart
