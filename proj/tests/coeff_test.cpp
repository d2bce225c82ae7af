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

#include "doctest.h"
#include "logchart/coeff.hpp"
#include "logchart/parse.hpp"
#include "test_support.hpp"

using namespace logchart;
using logchart::testing::code_of;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rat("-7/3") == make_rat(BigInt(-7), BigInt(3)));
  CHECK(parse_rat("6/4") == make_rat(BigInt(3), BigInt(2)));
  CHECK(to_string(parse_rat("6/4")) == "3/2");
  CHECK(code_of([] { parse_rat("1/0"); }) == ErrorCode::kDivisionByZero);
  CHECK(code_of([] { inverse(Rat(0)); }) == ErrorCode::kDivisionByZero);
}

TEST_CASE("prime field arithmetic") {
  ModP a(-1, 7);
  CHECK(a.v == 6);
  CHECK((a * a).v == 1);
  CHECK(code_of([] { inverse(ModP(0, 5)); }) == ErrorCode::kDivisionByZero);
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2U, 3U, 5U, 46337U}) {
    for (int k = 0; k < 50; ++k) {
      ModP x(testing::uniform(rng, 1, p - 1), p);
      CHECK((x * inverse(x)).v == 1);
      ModP y(testing::uniform(rng, 0, p - 1), p);
      CHECK((x + y) - y == x);
      CHECK((y / x) * x == y);
    }
  }
}

TEST_CASE("univariate polynomials and rational functions") {
  UniPoly t = UniPoly::monomial(Rat(1), 1);
  UniPoly one = UniPoly::constant(Rat(1));
  UniPoly a = (t + one) * (t - one);
  UniPoly q, r;
  UniPoly::divmod(a, t - one, q, r);
  CHECK(q == t + one);
  CHECK(r.is_zero());
  CHECK(UniPoly::gcd(a, (t - one) * t) == t - one);
  CHECK(UniPoly().degree() == -1);

  RatFunc f(a, (t - one) * UniPoly::constant(Rat(2)));
  CHECK(f.num() == UniPoly({Rat(1, 2), Rat(1, 2)}));
  CHECK(f.den() == one);
  CHECK(f.eval(Rat(1)) == 1);
  RatFunc g = inverse(RatFunc::variable());
  CHECK(g.ord0() == -1);
  CHECK(code_of([&] { g.eval(Rat(0)); }) == ErrorCode::kDivisionByZero);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 40; ++k) {
    RatFunc x(UniPoly({testing::random_rat(rng), testing::random_rat(rng), testing::random_rat(rng)}),
              UniPoly({testing::random_nonzero_rat(rng), testing::random_rat(rng)}));
    RatFunc y(UniPoly({testing::random_rat(rng), testing::random_nonzero_rat(rng)}), UniPoly::constant(Rat(1)));
    CHECK((x + y) - y == x);
    CHECK(x * (y + RatFunc(Rat(1))) == x * y + x);
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}

TEST_CASE("rational function parsing") {
  RatFunc f = expr::parse_ratfunc("t^3/(1+t)", "t");
  CHECK(f.ord0() == 3);
  CHECK(f.eval(Rat(1)) == Rat(1, 2));
  CHECK(code_of([] { expr::parse_ratfunc("s + 1", "t"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { expr::parse_ratfunc("1/(t - t)", "t"); }) == ErrorCode::kDivisionByZero);
}

TEST_CASE("valuations") {
  CHECK(padic_valuation(Rat(12), BigInt(2)).value == 2);
  CHECK(padic_valuation(make_rat(BigInt(3), BigInt(8)), BigInt(2)).value == -3);
  CHECK(padic_valuation(Rat(0), BigInt(2)).infinite);
  CHECK(ord0_valuation(expr::parse_ratfunc("t^2 + t^3", "t")).value == 2);
  CHECK(Valuation::of(3) < Valuation::inf());
  CHECK((Valuation::of(1) + Valuation::of(2)).value == 3);
}

TEST_CASE("DVR models and elements") {
  CHECK(code_of([] { DvrModel::mixed(BigInt(4)); }) == ErrorCode::kInvalidArgument);
  DvrModel m2 = DvrModel::mixed(BigInt(2));
  CHECK(m2.pi_symbol() == "p");
  CHECK(code_of([&] { DvrElement(m2, make_rat(BigInt(1), BigInt(2))); }) == ErrorCode::kNegativeValuation);
  DvrElement e(m2, make_rat(BigInt(4), BigInt(3)));
  CHECK(valuation(e, m2).value == 2);
  CHECK(std::get<ModP>(reduce_mod_pi(DvrElement(m2, make_rat(BigInt(1), BigInt(3))), m2)).v == 1);
  CHECK(valuation(parse_dvr_element("p^3", m2), m2).value == 3);

  DvrModel eq = DvrModel::equichar0();
  DvrElement u = parse_dvr_element("(1 + t)/(2 - t)", eq);
  CHECK(std::get<Rat>(reduce_mod_pi(u, eq)) == Rat(1, 2));
  CHECK(code_of([&] { parse_dvr_element("1/t", eq); }) == ErrorCode::kNegativeValuation);
  CHECK(reduce_rat_mod(make_rat(BigInt(1), BigInt(3)), 4) == 3);
}
