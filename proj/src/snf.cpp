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

#include "logchart/snf.hpp"

#include <utility>

namespace logchart {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<BigInt>>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) fail(ErrorCode::kInvalidArgument, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = columns[j][i];
  }
  return m;
}

std::vector<BigInt> IntMatrix::column(std::size_t j) const {
  std::vector<BigInt> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::kInvalidArgument, "matrix shapes do not compose");
  IntMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& v) const {
  if (v.size() != cols_) fail(ErrorCode::kInvalidArgument, "vector length does not match the matrix");
  std::vector<BigInt> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

BigInt IntMatrix::determinant() const {
  if (rows_ != cols_) fail(ErrorCode::kInvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return BigInt(1);
  IntMatrix m = *this;
  BigInt prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m.at(swap, k) == 0) ++swap;
      if (swap == n) return BigInt(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + at(i, j).get_str();
    out += "]";
  }
  return out + "]";
}

namespace {

// Row and column operations applied to D and mirrored on the transforms.
struct Reducer {
  SnfResult& s;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < s.d.cols(); ++c) std::swap(s.d.at(i, c), s.d.at(j, c));
    for (std::size_t c = 0; c < s.u.cols(); ++c) std::swap(s.u.at(i, c), s.u.at(j, c));
    for (std::size_t r = 0; r < s.u_inv.rows(); ++r) std::swap(s.u_inv.at(r, i), s.u_inv.at(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < s.d.rows(); ++r) std::swap(s.d.at(r, i), s.d.at(r, j));
    for (std::size_t r = 0; r < s.w.rows(); ++r) std::swap(s.w.at(r, i), s.w.at(r, j));
    for (std::size_t c = 0; c < s.w_inv.cols(); ++c) std::swap(s.w_inv.at(i, c), s.w_inv.at(j, c));
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t c = 0; c < s.d.cols(); ++c) s.d.at(i, c) += k * s.d.at(j, c);
    for (std::size_t c = 0; c < s.u.cols(); ++c) s.u.at(i, c) += k * s.u.at(j, c);
    for (std::size_t r = 0; r < s.u_inv.rows(); ++r) s.u_inv.at(r, j) -= k * s.u_inv.at(r, i);
  }
  // col_j += k * col_i
  void add_col(std::size_t j, std::size_t i, const BigInt& k) {
    for (std::size_t r = 0; r < s.d.rows(); ++r) s.d.at(r, j) += k * s.d.at(r, i);
    for (std::size_t r = 0; r < s.w.rows(); ++r) s.w.at(r, j) += k * s.w.at(r, i);
    for (std::size_t c = 0; c < s.w_inv.cols(); ++c) s.w_inv.at(i, c) -= k * s.w_inv.at(j, c);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < s.d.cols(); ++c) s.d.at(i, c) = -s.d.at(i, c);
    for (std::size_t c = 0; c < s.u.cols(); ++c) s.u.at(i, c) = -s.u.at(i, c);
    for (std::size_t r = 0; r < s.u_inv.rows(); ++r) s.u_inv.at(r, i) = -s.u_inv.at(r, i);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfResult s{IntMatrix::identity(m), IntMatrix::identity(m), a, IntMatrix::identity(n), IntMatrix::identity(n), 0, {}};
  Reducer red{s};
  IntMatrix& d = s.d;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    auto pick_pivot = [&]() -> bool {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d.at(i, j) != 0 && (bi == m || mpz_cmpabs(d.at(i, j).get_mpz_t(), d.at(bi, bj).get_mpz_t()) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == m) return false;
      red.swap_rows(t, bi);
      red.swap_cols(t, bj);
      return true;
    };
    if (!pick_pivot()) break;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d.at(i, t) == 0) continue;
        BigInt qt;
        mpz_tdiv_q(qt.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
        red.add_row(i, t, -qt);
        if (d.at(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d.at(t, j) == 0) continue;
        BigInt qt;
        mpz_tdiv_q(qt.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
        red.add_col(j, t, -qt);
        if (d.at(t, j) != 0) dirty = true;
      }
      if (dirty) {
        pick_pivot();
        continue;
      }
      // Row and column t are clear; enforce divisibility on the rest.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d.at(i, j).get_mpz_t(), d.at(t, t).get_mpz_t())) {
            red.add_row(t, i, BigInt(1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d.at(t, t) < 0) red.negate_row(t);
    s.invariants.push_back(d.at(t, t));
    s.rank = t + 1;
  }
  return s;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::kInvalidArgument, "inverse of a non-square matrix");
  if (a.rows() == 0) return a;
  SnfResult s = smith_normal_form(a);
  if (s.rank != a.rows() || s.invariants.back() != 1)
    fail(ErrorCode::kInvalidArgument, "matrix is not unimodular");
  // U A W = I, so A^-1 = W U.
  return s.w * s.u;
}

std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& a) {
  SnfResult s = smith_normal_form(a);
  std::vector<std::vector<BigInt>> out;
  for (std::size_t j = s.rank; j < a.cols(); ++j) out.push_back(s.w.column(j));
  return out;
}

}  // namespace logchart
