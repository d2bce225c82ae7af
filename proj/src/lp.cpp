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

#include "logchart/lp.hpp"

namespace logchart {
namespace {

class Tableau {
 public:
  // Columns: n structural, m artificial, then the right-hand side.
  Tableau(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b, std::size_t n)
      : m_(a.size()), n_(n), t_(m_, std::vector<Rat>(n + m_ + 1)), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      Rat s = sgn(b[i]) < 0 ? Rat(-1) : Rat(1);
      for (std::size_t j = 0; j < n; ++j) t_[i][j] = s * a[i][j];
      t_[i][n + i] = 1;
      t_[i][n + m_] = s * b[i];
      basis_[i] = n + i;
    }
  }

  // Maximizes cost over the allowed columns; false if unbounded.
  bool optimize(const std::vector<Rat>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < n_ + m_ && enter == SIZE_MAX; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        Rat r = cost[j];
        for (std::size_t i = 0; i < m_; ++i) r -= cost[basis_[i]] * t_[i][j];
        if (sgn(r) > 0) enter = j;
      }
      if (enter == SIZE_MAX) return true;
      std::size_t leave = SIZE_MAX;
      Rat best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rat ratio = t_[i][n_ + m_] / t_[i][enter];
        if (leave == SIZE_MAX || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == SIZE_MAX) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Rat inv = 1 / t_[row][col];
    for (auto& v : t_[row]) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || sgn(t_[i][col]) == 0) continue;
      Rat f = t_[i][col];
      for (std::size_t j = 0; j < t_[i].size(); ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  bool is_basic(std::size_t j) const {
    for (std::size_t b : basis_)
      if (b == j) return true;
    return false;
  }

  Rat objective(const std::vector<Rat>& cost) const {
    Rat v;
    for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * t_[i][n_ + m_];
    return v;
  }

  std::vector<Rat> solution() const {
    std::vector<Rat> x(n_);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][n_ + m_];
    return x;
  }

  // After phase one: pivot artificial columns out of the basis where a
  // structural column can replace them; rows with none are redundant.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(t_[i][j]) != 0 && !is_basic(j)) {
          pivot(i, j);
          break;
        }
    }
  }

  std::size_t m_, n_;
  std::vector<std::vector<Rat>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b, const std::vector<Rat>& c) {
  const std::size_t m = a.size(), n = c.size();
  if (b.size() != m) fail(ErrorCode::kInvalidArgument, "LP right-hand side length mismatch");
  for (const auto& row : a)
    if (row.size() != n) fail(ErrorCode::kInvalidArgument, "LP row length mismatch");
  LpResult res;
  Tableau tab(a, b, n);
  std::vector<Rat> phase1(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  std::vector<bool> all(n + m, true);
  tab.optimize(phase1, all);
  if (sgn(tab.objective(phase1)) < 0) return res;
  tab.expel_artificials();
  std::vector<Rat> phase2(n + m);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  std::vector<bool> structural(n + m, false);
  for (std::size_t j = 0; j < n; ++j) structural[j] = true;
  if (!tab.optimize(phase2, structural)) {
    res.status = LpResult::Status::kUnbounded;
    return res;
  }
  res.status = LpResult::Status::kOptimal;
  res.value = tab.objective(phase2);
  res.x = tab.solution();
  return res;
}

}  // namespace logchart
