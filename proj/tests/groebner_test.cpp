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

#include <algorithm>

#include "doctest.h"
#include "logchart/groebner.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace logchart;
using namespace logchart::testing;
using logchart::testing::code_of;

namespace {

const VarSet kXy({"x", "y"});
const VarSet kXyz({"x", "y", "z"});

Poly<Rat> q(const char* s, const VarSet& v = kXy) { return parse_poly_q(s, v); }

std::vector<std::string> printed(const GroebnerBasis<Rat>& gb, const VarSet& v) {
  std::vector<std::string> out;
  for (const auto& g : gb.elements()) out.push_back(to_string(g, v));
  return out;
}

}  // namespace

TEST_CASE("monomial orders") {
  auto lex = MonomialOrder::lex(2);
  auto grev = MonomialOrder::grevlex(3);
  CHECK(lex.greater({1, 0}, {0, 5}));
  CHECK_FALSE(grev.greater({0, 0, 2}, {1, 1, 0}));
  CHECK(grev.greater({1, 1, 0}, {0, 0, 2}));
  // x*z vs y^2 in grevlex: the smaller last exponent wins.
  CHECK(grev.greater({0, 2, 0}, {1, 0, 1}));
  auto blk = MonomialOrder::block({{{1}, MonomialOrder::Kind::kLex}, {{0, 2}, MonomialOrder::Kind::kGrevlex}}, 3);
  CHECK(blk.greater({0, 1, 0}, {5, 0, 5}));
  CHECK(code_of([] { MonomialOrder::block({{{0}, MonomialOrder::Kind::kLex}}, 2); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] {
          MonomialOrder::block({{{0, 1}, MonomialOrder::Kind::kLex}, {{1}, MonomialOrder::Kind::kLex}}, 2);
        }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("reduced bases of small ideals") {
  auto gb = buchberger<Rat>({q("x^2 + y^2 - 1"), q("x - y")}, MonomialOrder::lex(2));
  CHECK(printed(gb, kXy) == std::vector<std::string>{"y^2 - 1/2", "x - y"});
  CHECK(gb.contains(q("x^2 - 1/2")));
  CHECK_FALSE(gb.contains(q("x")));
  CHECK(to_string(gb.normal_form(q("x^3")), kXy) == "1/2*y");

  auto unit = buchberger<Rat>({q("x*y - 1"), q("x")}, MonomialOrder::grevlex(2));
  CHECK(unit.is_unit_ideal());
  auto zero = buchberger<Rat>({Poly<Rat>(2)}, MonomialOrder::grevlex(2));
  CHECK(zero.is_zero_ideal());
  CHECK(code_of([] { buchberger<Rat>({q("x")}, MonomialOrder::lex(3)); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("twisted cubic") {
  auto gb = buchberger<Rat>({q("y - x^2", kXyz), q("z - x^3", kXyz)}, MonomialOrder::grevlex(3));
  CHECK(audit_groebner(gb).ok());
  CHECK(gb.contains(q("x*z - y^2", kXyz)));
  CHECK(gb.contains(q("y^3 - z^2", kXyz)));
}

TEST_CASE("budgets are enforced") {
  GbBudget tight;
  tight.max_pairs = 1;
  CHECK(code_of([&] {
          buchberger<Rat>({q("y - x^2", kXyz), q("z - x^3", kXyz), q("x*y*z - 1", kXyz)},
                          MonomialOrder::grevlex(3), tight);
        }) == ErrorCode::kBudgetExceeded);
  GbBudget low_degree;
  low_degree.max_degree = 2;
  CHECK(code_of([&] { buchberger<Rat>({q("x^3 - y")}, MonomialOrder::lex(2), low_degree); }) ==
        ErrorCode::kBudgetExceeded);
}

TEST_CASE("reduced basis is independent of generator order and presentation") {
  std::mt19937_64 rng(2024);
  auto c = [](std::mt19937_64& r) { return testing::random_rat(r, 4); };
  for (int k = 0; k < 25; ++k) {
    std::vector<Poly<Rat>> gens;
    for (int j = 0; j < 3; ++j) gens.push_back(testing::random_poly<Rat>(rng, 3, 3, 3, c));
    auto ord = MonomialOrder::grevlex(3);
    auto a = buchberger(gens, ord);
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.push_back(gens[0] * gens[1] + gens[2]);
    auto b = buchberger(shuffled, ord);
    CHECK(a.elements() == b.elements());
    CHECK(audit_groebner(a).ok());
    for (const auto& g : gens) CHECK(a.contains(g));
  }
}

TEST_CASE("bases over prime fields and Q(t)") {
  auto fp = [](const char* s) { return map_coefficients<ModP>(q(s), [](const Rat& c) { return reduce_rat_mod_p(c, 3); }); };
  auto gb = buchberger<ModP>({fp("x^3 - y"), fp("y^2 - 1")}, MonomialOrder::lex(2));
  CHECK(audit_groebner(gb).ok());
  CHECK(gb.contains(fp("x^6 - 1")));

  auto eq = [](const char* s) { return parse_poly_equi(s, kXy); };
  auto gq = buchberger<RatFunc>({eq("x*y - t"), eq("x - y")}, MonomialOrder::lex(2));
  CHECK(audit_groebner(gq).ok());
  CHECK(gq.contains(eq("y^2 - t")));
}

TEST_CASE("elimination") {
  // Image of t -> (t^2, t^3): the cusp y^2 = x^3.
  VarSet txy({"t", "x", "y"});
  auto ord = MonomialOrder::block({{{0}, MonomialOrder::Kind::kLex}, {{1, 2}, MonomialOrder::Kind::kGrevlex}}, 3);
  auto elim = elimination_ideal<Rat>({q("x - t^2", txy), q("y - t^3", txy)}, ord, {0});
  REQUIRE(elim.size() == 1);
  CHECK(elim[0] == q("x^3 - y^2", txy));
}

TEST_CASE("toric ideals") {
  // Relation lattice of <(1,0),(1,1),(1,2)> is spanned by (1,-2,1).
  VarSet u({"u1", "u2", "u3"});
  auto t = toric_ideal({{BigInt(1), BigInt(-2), BigInt(1)}}, 3);
  REQUIRE(t.size() == 1);
  CHECK(to_string(t[0], u) == "u1*u3 - u2^2");
  // Lattice ideal of the non-saturated lattice 2Z(1,-1): x^2 - y^2 stays.
  auto sat = toric_ideal({{BigInt(2), BigInt(-2)}}, 2);
  REQUIRE(sat.size() == 1);
  CHECK(to_string(sat[0], kXy) == "x^2 - y^2");
  CHECK(toric_ideal({}, 2).empty());
  // Twisted cubic from <(3,0),(2,1),(1,2),(0,3)>: kernel spanned by
  // (1,-2,1,0) and (0,1,-2,1); saturation adds u1*u4 - u2*u3.
  VarSet u4({"a", "b", "c", "d"});
  auto cubic = toric_ideal({{BigInt(1), BigInt(-2), BigInt(1), BigInt(0)}, {BigInt(0), BigInt(1), BigInt(-2), BigInt(1)}}, 4);
  auto gb = buchberger(cubic, MonomialOrder::grevlex(4));
  CHECK(gb.contains(parse_poly_q("a*d - b*c", u4)));
  CHECK(gb.size() == 3);
}

TEST_CASE("finiteness over the image") {
  auto one = Rat(1);
  // Q[x,y]/(xy - 2) over Q[x + y^4]: finite.
  CHECK(is_finite_over_image<Rat>({q("x*y - 2")}, {q("x + y^4")}, one).finite);
  // Over Q[x]: y is not integral.
  auto v = is_finite_over_image<Rat>({q("x*y - 2")}, {q("x")}, one);
  CHECK_FALSE(v.finite);
  CHECK(v.pure_powers[0].has_value());
  CHECK_FALSE(v.pure_powers[1].has_value());
  // Special fiber xy over F_2[x + y^4].
  auto f2 = [](const char* s) { return map_coefficients<ModP>(q(s), [](const Rat& c) { return reduce_rat_mod_p(c, 2); }); };
  CHECK(is_finite_over_image<ModP>({f2("x*y")}, {f2("x + y^4")}, ModP(1, 2)).finite);
  CHECK_FALSE(is_finite_over_image<ModP>({f2("x*y")}, {f2("x")}, ModP(1, 2)).finite);
  // Zero-dimensional quotient is finite over a point; the empty scheme too.
  CHECK(is_finite_over_image<Rat>({q("x^2 - 1"), q("y^3")}, {}, one).finite);
  CHECK(is_finite_over_image<Rat>({q("1")}, {}, one).finite);
  CHECK_FALSE(is_finite_over_image<Rat>({q("x*y")}, {}, one).finite);
}

TEST_CASE("finiteness agrees with the univariate oracle") {
  std::mt19937_64 rng(99);
  int agree = 0;
  for (int k = 0; k < 100; ++k) {
    UnivariateCase c = random_univariate_case(rng);
    bool got = false;
    if (!c.ideal.empty() || !c.f.empty()) got = is_finite_over_image<Rat>(c.ideal, c.f, Rat(1)).finite;
    CHECK(got == c.expected);
    if (got == c.expected) ++agree;
  }
  CHECK(agree == 100);
}
