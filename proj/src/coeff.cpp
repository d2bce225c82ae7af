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

#include "logchart/coeff.hpp"

#include <algorithm>
#include <sstream>

#include "logchart/parse.hpp"

namespace logchart {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kNegativeValuation: return "NegativeValuation";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kExponentOverflow: return "ExponentOverflow";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kNotFree: return "NotFree";
    case ErrorCode::kTorsionNotInvertible: return "TorsionNotInvertible";
    case ErrorCode::kNoUnitContentGenerator: return "NoUnitContentGenerator";
    case ErrorCode::kRetryExhausted: return "RetryExhausted";
    case ErrorCode::kNotCertified: return "NotCertified";
    case ErrorCode::kPreconditionError: return "PreconditionError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kIdentityFailed: return "IdentityFailed";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::kDivisionByZero, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& v) { return v.get_str(); }
std::string to_string(const Rat& v) { return v.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    return make_rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::kParseError, "not a rational number: '" + s + "'");
  }
}

Rat inverse(const Rat& v) {
  if (is_zero(v)) fail(ErrorCode::kDivisionByZero, "inverse of 0 in Q");
  return 1 / v;
}

// ---------------------------------------------------------------------------
// F_p

ModP::ModP(std::int64_t value, std::uint32_t modulus) : p(modulus) {
  std::int64_t r = value % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  v = static_cast<std::uint32_t>(r);
}

ModP inverse(const ModP& a) {
  if (a.v == 0) fail(ErrorCode::kDivisionByZero, "inverse of 0 in F_" + std::to_string(a.p));
  std::int64_t r0 = a.p, r1 = a.v, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) fail(ErrorCode::kDivisionByZero, "non-invertible residue");
  return ModP(s0, a.p);
}

ModP operator/(ModP a, ModP b) { return a * inverse(b); }

std::string to_string(const ModP& v) { return std::to_string(v.v); }

// ---------------------------------------------------------------------------
// Q[t]

UniPoly::UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rat& c) { return UniPoly(std::vector<Rat>{c}); }

UniPoly UniPoly::monomial(const Rat& c, std::size_t degree) {
  std::vector<Rat> v(degree + 1);
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

long UniPoly::ord0() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) return static_cast<long>(i);
  return -1;
}

Rat UniPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  Rat lc = leading();
  std::vector<Rat> v(coeffs_);
  for (auto& c : v) c /= lc;
  return UniPoly(std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
  return UniPoly(std::move(v));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rat> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rat> v(coeffs_);
  for (auto& c : v) c = -c;
  return UniPoly(std::move(v));
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
  if (b.is_zero()) fail(ErrorCode::kDivisionByZero, "polynomial division by zero");
  std::vector<Rat> rem(a.coeffs_);
  long db = b.degree();
  long da = a.degree();
  std::vector<Rat> quo(da >= db ? static_cast<std::size_t>(da - db + 1) : 0);
  const Rat& lb = b.leading();
  for (long k = da; k >= db; --k) {
    Rat c = rem[static_cast<std::size_t>(k)] / lb;
    if (sgn(c) == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = c;
    for (long j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
  }
  q = UniPoly(std::move(quo));
  r = UniPoly(std::move(rem));
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

std::string rat_coeff_prefix(const Rat& c, bool first, bool has_monomial) {
  std::string out;
  Rat a = abs(c);
  if (first) {
    if (sgn(c) < 0) out += "-";
  } else {
    out += sgn(c) < 0 ? " - " : " + ";
  }
  if (!has_monomial || a != 1) {
    out += a.get_str();
    if (has_monomial) out += "*";
  }
  return out;
}

}  // namespace

std::string UniPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (long k = degree(); k >= 0; --k) {
    const Rat& c = coeffs_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    out += rat_coeff_prefix(c, first, k > 0);
    if (k > 0) {
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Q(t)

RatFunc::RatFunc(UniPoly num, UniPoly den) {
  if (den.is_zero()) fail(ErrorCode::kDivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) {
    den_ = UniPoly::constant(Rat(1));
    return;
  }
  UniPoly g = UniPoly::gcd(num, den);
  UniPoly q, r;
  UniPoly::divmod(num, g, num_, r);
  UniPoly::divmod(den, g, den_, r);
  Rat lc = den_.leading();
  num_ = num_ * UniPoly::constant(1 / lc);
  den_ = den_.monic();
}

Rat RatFunc::eval(const Rat& x) const {
  Rat d = den_.eval(x);
  if (sgn(d) == 0) fail(ErrorCode::kDivisionByZero, "rational function pole at " + x.get_str());
  return num_.eval(x) / d;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_constant() && b.is_constant()) return RatFunc(a.num_.coeff(0) * b.num_.coeff(0));
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) fail(ErrorCode::kDivisionByZero, "division by zero in Q(t)");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc inverse(const RatFunc& v) { return RatFunc(Rat(1)) / v; }

std::string RatFunc::to_string(std::string_view var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

std::string to_string(const RatFunc& v) { return v.to_string("t"); }

// ---------------------------------------------------------------------------
// Valuations and the DVR models

Valuation padic_valuation(const Rat& v, const BigInt& p) {
  if (sgn(v) == 0) return Valuation::inf();
  long val = 0;
  BigInt n = v.get_num();
  BigInt d = v.get_den();
  while (n % p == 0) {
    n /= p;
    ++val;
  }
  while (d % p == 0) {
    d /= p;
    --val;
  }
  return Valuation::of(val);
}

Valuation ord0_valuation(const RatFunc& v) {
  if (v.is_zero()) return Valuation::inf();
  return Valuation::of(v.ord0());
}

bool is_prime_trial(const BigInt& n) {
  if (n < 2) return false;
  for (BigInt d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

DvrModel DvrModel::mixed(const BigInt& p) {
  if (!is_prime_trial(p)) fail(ErrorCode::kInvalidArgument, "residue characteristic " + p.get_str() + " is not prime");
  if (p > 46340) fail(ErrorCode::kInvalidArgument, "prime too large for the residue arithmetic");
  return DvrModel(Kind::kMixed, p);
}

DvrElement::DvrElement(const DvrModel& model, Rat value) : model_(model), value_(std::move(value)) {
  if (!model.is_mixed()) fail(ErrorCode::kInvalidArgument, "rational element under EquiChar0 model");
  if (padic_valuation(as_rat(), model.residue_characteristic()) < Valuation::of(0))
    fail(ErrorCode::kNegativeValuation, as_rat().get_str() + " is not in Z_(p)");
}

DvrElement::DvrElement(const DvrModel& model, RatFunc value) : model_(model), value_(std::move(value)) {
  if (model.is_mixed()) fail(ErrorCode::kInvalidArgument, "rational function under MixedChar model");
  if (ord0_valuation(as_ratfunc()) < Valuation::of(0))
    fail(ErrorCode::kNegativeValuation, as_ratfunc().to_string() + " has a pole at t = 0");
}

DvrElement operator+(const DvrElement& a, const DvrElement& b) {
  if (a.model_.is_mixed()) return DvrElement(a.model_, Rat(a.as_rat() + b.as_rat()));
  return DvrElement(a.model_, a.as_ratfunc() + b.as_ratfunc());
}

DvrElement operator-(const DvrElement& a, const DvrElement& b) {
  if (a.model_.is_mixed()) return DvrElement(a.model_, Rat(a.as_rat() - b.as_rat()));
  return DvrElement(a.model_, a.as_ratfunc() - b.as_ratfunc());
}

DvrElement operator*(const DvrElement& a, const DvrElement& b) {
  if (a.model_.is_mixed()) return DvrElement(a.model_, Rat(a.as_rat() * b.as_rat()));
  return DvrElement(a.model_, a.as_ratfunc() * b.as_ratfunc());
}

std::string DvrElement::to_string() const {
  if (model_.is_mixed()) return as_rat().get_str();
  return as_ratfunc().to_string("t");
}

Valuation valuation(const DvrElement& e, const DvrModel& model) {
  if (model.is_mixed()) return padic_valuation(e.as_rat(), model.residue_characteristic());
  return ord0_valuation(e.as_ratfunc());
}

ModP reduce_rat_mod_p(const Rat& v, std::uint32_t p) {
  BigInt pm(p);
  BigInt n = v.get_num() % pm;
  BigInt d = v.get_den() % pm;
  if (d == 0) fail(ErrorCode::kNegativeValuation, v.get_str() + " does not reduce mod " + std::to_string(p));
  ModP num(static_cast<std::int64_t>(n.get_si()), p);
  ModP den(static_cast<std::int64_t>(d.get_si()), p);
  return num / den;
}

std::uint64_t reduce_rat_mod(const Rat& v, std::uint64_t q) {
  BigInt qm(static_cast<unsigned long>(q));
  BigInt inv;
  BigInt d = v.get_den();
  if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), qm.get_mpz_t()) == 0)
    fail(ErrorCode::kNegativeValuation, v.get_str() + " does not reduce mod " + std::to_string(q));
  BigInt r = (v.get_num() * inv) % qm;
  if (r < 0) r += qm;
  return r.get_ui();
}

ResidueElement reduce_mod_pi(const DvrElement& e, const DvrModel& model) {
  if (valuation(e, model) < Valuation::of(0))
    fail(ErrorCode::kNegativeValuation, "element outside V");
  if (model.is_mixed()) return reduce_rat_mod_p(e.as_rat(), model.p_u32());
  return e.as_ratfunc().eval(Rat(0));
}

PrimeField::PrimeField(std::uint32_t prime) : p(prime) {
  if (!is_prime_trial(BigInt(prime))) fail(ErrorCode::kInvalidArgument, std::to_string(prime) + " is not prime");
}

DvrElement parse_dvr_element(std::string_view text, const DvrModel& model) {
  if (model.is_mixed()) {
    struct RatAlgebra {
      Rat p;
      Rat number(const BigInt& n) { return Rat(n); }
      Rat ident(const std::string& name) {
        if (name == "p") return p;
        fail(ErrorCode::kParseError, "unknown symbol '" + name + "' in element of Z_(p)");
      }
      Rat div(const Rat& a, const Rat& b) {
        if (is_zero(b)) fail(ErrorCode::kDivisionByZero, "division by zero");
        return a / b;
      }
      Rat pow(Rat a, std::int64_t k) {
        Rat r(1);
        for (std::int64_t i = 0; i < k; ++i) r *= a;
        return r;
      }
    } alg{Rat(model.residue_characteristic())};
    auto tree = expr::parse(text);
    return DvrElement(model, expr::evaluate<Rat>(*tree, alg));
  }
  return DvrElement(model, expr::parse_ratfunc(text, "t"));
}

}  // namespace logchart
