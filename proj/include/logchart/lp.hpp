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

// Exact rational linear programming for the monoid searches: maximize c.x
// subject to A x = b, x >= 0. Two-phase dense simplex with Bland's rule, so
// it terminates on degenerate problems.

#pragma once

#include <vector>

#include "logchart/coeff.hpp"

namespace logchart {

struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  Rat value;
  std::vector<Rat> x;
};

// `a` is row-major with a.size() constraints.
LpResult solve_lp(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b, const std::vector<Rat>& c);

inline bool lp_feasible(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b) {
  std::size_t n = a.empty() ? 0 : a.front().size();
  return solve_lp(a, b, std::vector<Rat>(n)).status != LpResult::Status::kInfeasible;
}

}  // namespace logchart
