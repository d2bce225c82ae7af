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

#include <numeric>

#include "doctest.h"
#include "logchart/snf.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace logchart;
using namespace logchart::testing;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

void check_snf_invariants(const IntMatrix& a, const SnfResult& s) {
  CHECK(s.u * a * s.w == s.d);
  BigInt du = s.u.determinant(), dw = s.w.determinant();
  CHECK(abs(du) == 1);
  CHECK(abs(dw) == 1);
  CHECK(s.u * s.u_inv == IntMatrix::identity(a.rows()));
  CHECK(s.w * s.w_inv == IntMatrix::identity(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i == j && i < s.rank) {
        CHECK(s.d.at(i, j) > 0);
      } else {
        CHECK(s.d.at(i, j) == 0);
      }
    }
  for (std::size_t i = 0; i + 1 < s.rank; ++i)
    CHECK(mpz_divisible_p(s.invariants[i + 1].get_mpz_t(), s.invariants[i].get_mpz_t()));
}

}  // namespace

TEST_CASE("small examples") {
  auto id = smith_normal_form(IntMatrix::identity(2));
  CHECK(id.d == IntMatrix::identity(2));
  CHECK(id.u == IntMatrix::identity(2));
  CHECK(id.w == IntMatrix::identity(2));
  auto a = smith_normal_form(from_rows({{2, 4}, {6, 8}}));
  CHECK(a.invariants == std::vector<BigInt>{2, 4});
  auto b = smith_normal_form(from_rows({{1, 1}, {1, -1}}));
  CHECK(b.invariants == std::vector<BigInt>{1, 2});
  auto z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.rank == 0);
  auto e = smith_normal_form(IntMatrix(3, 0));
  CHECK(e.rank == 0);
  CHECK(e.u == IntMatrix::identity(3));
}

TEST_CASE("determinants and inverses") {
  CHECK(from_rows({{2, 1}, {7, 4}}).determinant() == 1);
  CHECK(from_rows({{0, 1, 2}, {1, 0, 3}, {4, -3, 8}}).determinant() == -2);
  IntMatrix u = from_rows({{2, 1}, {7, 4}});
  CHECK(unimodular_inverse(u) * u == IntMatrix::identity(2));
  CHECK(testing::code_of([] { unimodular_inverse(from_rows({{2, 0}, {0, 1}})); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("kernel basis") {
  // Relation lattice of <(1,0),(1,1),(1,2)> is Z(1,-2,1).
  auto k = integer_kernel(from_rows({{1, 1, 1}, {0, 1, 2}}));
  REQUIRE(k.size() == 1);
  BigInt s = k[0][0];
  CHECK(k[0] == std::vector<BigInt>{s, -2 * s, s});
  CHECK(abs(s) == 1);
}

TEST_CASE("500 random matrices satisfy the SNF invariants") {
  std::mt19937_64 rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t r = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
    std::size_t c = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
    IntMatrix a = random_matrix(rng, r, c);
    check_snf_invariants(a, smith_normal_form(a));
  }
}

TEST_CASE("3x3 invariants agree with two independent oracles") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 150; ++trial) {
    IntMatrix a = random_matrix(rng, 3, 3);
    std::vector<std::vector<long>> rows(3, std::vector<long>(3));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) rows[i][j] = a.at(i, j).get_si();
    auto s = smith_normal_form(a);
    std::vector<BigInt> diag(3);
    for (std::size_t i = 0; i < s.rank; ++i) diag[i] = s.invariants[i];

    auto dd = determinantal_divisors_3x3(a);
    BigInt prefix(1);
    for (std::size_t k = 0; k < 3; ++k) {
      prefix *= diag[k];
      CHECK(prefix == dd[k]);
    }
    auto oracle = gcd_reduction_diagonal(rows);
    for (std::size_t k = 0; k < 3; ++k) CHECK(diag[k] == oracle[k]);
  }
}
