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

#include "logchart/poly.hpp"

#include <set>

#include "logchart/parse.hpp"

namespace logchart {

Exponent checked_add(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::kExponentOverflow, "exponent sum overflows int64");
  return r;
}

Exponent checked_mul(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::kExponentOverflow, "exponent product overflows int64");
  return r;
}

Exponent checked_pow(Exponent base, Exponent e) {
  Exponent r = 1;
  for (Exponent i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) fail(ErrorCode::kInvalidArgument, "empty variable name");
    if (!seen.insert(n).second) fail(ErrorCode::kInvalidArgument, "duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t VarSet::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) fail(ErrorCode::kInvalidArgument, "unknown variable '" + std::string(name) + "'");
  return *i;
}

CoeffText coeff_text(const Rat& c) {
  CoeffText t;
  t.negative = sgn(c) < 0;
  Rat a = abs(c);
  t.is_one = a == 1;
  t.magnitude = a.get_str();
  return t;
}

CoeffText coeff_text(const ModP& c) {
  CoeffText t;
  t.is_one = c.v == 1;
  t.magnitude = std::to_string(c.v);
  return t;
}

CoeffText coeff_text(const RatFunc& c) {
  if (c.is_constant()) return coeff_text(c.num().coeff(0));
  CoeffText t;
  RatFunc shown = c;
  if (sgn(c.num().leading()) < 0) {
    t.negative = true;
    shown = -c;
  }
  t.magnitude = "(" + shown.to_string("t") + ")";
  return t;
}

namespace {

template <class C>
struct PolyAlgebra {
  const VarSet& vars;
  C one;
  std::optional<C> pi;  // value of the reserved uniformizer symbol
  std::string pi_name;

  Poly<C> number(const BigInt& n) { return Poly<C>::constant(vars.size(), one * C(Rat(n))); }
  Poly<C> ident(const std::string& name) {
    if (auto i = vars.index_of(name)) return Poly<C>::variable(vars.size(), *i, one);
    if (pi && name == pi_name) return Poly<C>::constant(vars.size(), *pi);
    fail(ErrorCode::kParseError, "undeclared variable '" + name + "'");
  }
  Poly<C> div(const Poly<C>& a, const Poly<C>& b) {
    if (b.is_zero()) fail(ErrorCode::kDivisionByZero, "division by zero polynomial");
    if (!b.is_constant()) fail(ErrorCode::kParseError, "division only by constants is supported");
    return a.scaled(inverse(b.terms().begin()->second));
  }
  Poly<C> pow(const Poly<C>& a, std::int64_t k) { return a.pow(static_cast<std::uint64_t>(k), one); }
};

}  // namespace

Poly<Rat> parse_poly_q(std::string_view text, const VarSet& vars) {
  PolyAlgebra<Rat> alg{vars, Rat(1), std::nullopt, ""};
  auto tree = expr::parse(text);
  return expr::evaluate<Poly<Rat>>(*tree, alg);
}

void check_not_reserved(const VarSet& vars, const DvrModel& model) {
  if (vars.index_of(model.pi_symbol()))
    fail(ErrorCode::kParseError, "'" + std::string(model.pi_symbol()) + "' is the reserved uniformizer symbol");
}

Poly<Rat> parse_poly_mixed(std::string_view text, const VarSet& vars, const BigInt& p) {
  if (vars.index_of("p")) fail(ErrorCode::kParseError, "'p' is the reserved uniformizer symbol");
  PolyAlgebra<Rat> alg{vars, Rat(1), Rat(p), "p"};
  auto tree = expr::parse(text);
  return expr::evaluate<Poly<Rat>>(*tree, alg);
}

Poly<RatFunc> parse_poly_equi(std::string_view text, const VarSet& vars) {
  if (vars.index_of("t")) fail(ErrorCode::kParseError, "'t' is the reserved uniformizer symbol");
  PolyAlgebra<RatFunc> alg{vars, RatFunc(Rat(1)), RatFunc::variable(), "t"};
  auto tree = expr::parse(text);
  return expr::evaluate<Poly<RatFunc>>(*tree, alg);
}

std::pair<Poly<Rat>, long> content_normalize(const Poly<Rat>& f, const DvrModel& model) {
  if (f.is_zero()) fail(ErrorCode::kZeroPolynomial, "content of the zero polynomial");
  if (!model.is_mixed()) fail(ErrorCode::kInvalidArgument, "rational coefficients need the MixedChar model");
  const BigInt& p = model.residue_characteristic();
  long v = std::numeric_limits<long>::max();
  for (const auto& [m, c] : f.terms()) v = std::min(v, padic_valuation(c, p).value);
  if (v < 0) fail(ErrorCode::kNegativeValuation, "coefficient outside Z_(p)");
  BigInt pv;
  mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v));
  return {f.scaled(Rat(1) / Rat(pv)), v};
}

std::pair<Poly<RatFunc>, long> content_normalize(const Poly<RatFunc>& f, const DvrModel& model) {
  if (f.is_zero()) fail(ErrorCode::kZeroPolynomial, "content of the zero polynomial");
  if (model.is_mixed()) fail(ErrorCode::kInvalidArgument, "Q(t) coefficients need the EquiChar0 model");
  long v = std::numeric_limits<long>::max();
  for (const auto& [m, c] : f.terms()) v = std::min(v, c.ord0());
  if (v < 0) fail(ErrorCode::kNegativeValuation, "coefficient with a pole at t = 0");
  RatFunc tv(UniPoly::monomial(Rat(1), static_cast<std::size_t>(v)), UniPoly::constant(Rat(1)));
  return {f.scaled(inverse(tv)), v};
}

Poly<ModP> special_fiber(const Poly<Rat>& f, const DvrModel& model) {
  if (!model.is_mixed()) fail(ErrorCode::kInvalidArgument, "rational coefficients need the MixedChar model");
  const std::uint32_t p = model.p_u32();
  return map_coefficients<ModP>(f, [p](const Rat& c) { return reduce_rat_mod_p(c, p); });
}

Poly<Rat> special_fiber(const Poly<RatFunc>& f, const DvrModel& model) {
  if (model.is_mixed()) fail(ErrorCode::kInvalidArgument, "Q(t) coefficients need the EquiChar0 model");
  return map_coefficients<Rat>(f, [](const RatFunc& c) {
    if (c.ord0() < 0) fail(ErrorCode::kNegativeValuation, "coefficient with a pole at t = 0");
    return c.eval(Rat(0));
  });
}

Poly<Rat> clear_denominators(const Poly<Rat>& f) {
  if (f.is_zero()) return f;
  BigInt l(1), g(0);
  for (const auto& [m, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [m, c] : f.terms()) {
    BigInt n = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rat s = make_rat(l, g);
  // Sign convention: leading (lex-largest) coefficient positive.
  if (sgn(f.terms().rbegin()->second) < 0) s = -s;
  return f.scaled(s);
}

Poly<RatFunc> clear_denominators(const Poly<RatFunc>& f) {
  if (f.is_zero()) return f;
  UniPoly l = UniPoly::constant(Rat(1));
  for (const auto& [m, c] : f.terms()) {
    UniPoly g = UniPoly::gcd(l, c.den());
    UniPoly q, r;
    UniPoly::divmod(l * c.den(), g, q, r);
    l = q;
  }
  UniPoly g;
  for (const auto& [m, c] : f.terms()) {
    UniPoly q, r;
    UniPoly::divmod(c.num() * l, c.den(), q, r);
    g = UniPoly::gcd(g, q);
  }
  RatFunc s(l, g);
  const RatFunc lead = f.terms().rbegin()->second * s;
  s = s * RatFunc(inverse(lead.num().leading()));
  return f.scaled(s);
}

}  // namespace logchart
