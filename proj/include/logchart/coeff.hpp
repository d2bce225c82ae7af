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

// Exact coefficient arithmetic: integers, rationals, prime fields, univariate
// rational functions, and the two discrete valuation ring models
//   MixedChar:  V = Z_(p), pi = p, K = Q,    k = F_p
//   EquiChar0:  V = Q[t]_(t), pi = t, K = Q(t), k = Q

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "logchart/error.hpp"

namespace logchart {

using BigInt = mpz_class;
using Rat = mpq_class;

Rat make_rat(const BigInt& num, const BigInt& den);
std::string to_string(const BigInt& v);
std::string to_string(const Rat& v);
// Accepts "12", "-7/3".
Rat parse_rat(std::string_view text);

inline bool is_zero(const Rat& v) { return sgn(v) == 0; }
inline bool is_one(const Rat& v) { return v == 1; }
inline Rat one_like(const Rat&) { return Rat(1); }
inline Rat mul_int(const Rat& v, std::int64_t k) { return v * Rat(static_cast<long>(k)); }
Rat inverse(const Rat& v);

/// Element of F_p. The modulus travels with the value so polynomial code
/// never needs a separate ring context.
struct ModP {
  std::uint32_t v = 0;
  std::uint32_t p = 2;

  ModP() = default;
  ModP(std::int64_t value, std::uint32_t modulus);

  friend ModP operator+(ModP a, ModP b) { return ModP::raw((a.v + b.v) % a.p, a.p); }
  friend ModP operator-(ModP a, ModP b) { return ModP::raw((a.v + a.p - b.v) % a.p, a.p); }
  friend ModP operator*(ModP a, ModP b) {
    return ModP::raw(static_cast<std::uint32_t>(
                         static_cast<std::uint64_t>(a.v) * b.v % a.p),
                     a.p);
  }
  friend ModP operator/(ModP a, ModP b);
  ModP operator-() const { return ModP::raw((p - v) % p, p); }
  ModP& operator+=(ModP o) { return *this = *this + o; }
  ModP& operator-=(ModP o) { return *this = *this - o; }
  ModP& operator*=(ModP o) { return *this = *this * o; }
  friend bool operator==(ModP a, ModP b) { return a.v == b.v && a.p == b.p; }

  static ModP raw(std::uint32_t value, std::uint32_t modulus) {
    ModP r;
    r.v = value;
    r.p = modulus;
    return r;
  }
};

inline bool is_zero(const ModP& v) { return v.v == 0; }
inline bool is_one(const ModP& v) { return v.v == 1; }
inline ModP one_like(const ModP& v) { return ModP::raw(1 % v.p, v.p); }
inline ModP mul_int(const ModP& v, std::int64_t k) { return v * ModP(k, v.p); }
ModP inverse(const ModP& v);
std::string to_string(const ModP& v);

/// Dense univariate polynomial over Q, coefficients stored low to high and
/// trimmed so the zero polynomial is the empty vector.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs);
  static UniPoly constant(const Rat& c);
  static UniPoly monomial(const Rat& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
  const Rat& leading() const { return coeffs_.back(); }
  // Order of vanishing at 0; -1 for the zero polynomial.
  long ord0() const;
  Rat eval(const Rat& x) const;
  UniPoly monic() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator-() const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  // Euclidean division; throws DivisionByZero for b = 0.
  static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
  // Monic gcd (zero when both inputs are zero).
  static UniPoly gcd(UniPoly a, UniPoly b);

  std::string to_string(std::string_view var) const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

/// Element of Q(t): reduced fraction with monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(UniPoly::constant(Rat(1))) {}
  RatFunc(const Rat& c) : num_(UniPoly::constant(c)), den_(UniPoly::constant(Rat(1))) {}  // NOLINT
  RatFunc(UniPoly num, UniPoly den);
  static RatFunc variable() { return RatFunc(UniPoly::monomial(Rat(1), 1), UniPoly::constant(Rat(1))); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  // ord_0(num) - ord_0(den); meaningless for zero.
  long ord0() const { return num_.ord0() - den_.ord0(); }
  // Evaluate at a point where the denominator does not vanish.
  Rat eval(const Rat& x) const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const { return RatFunc(-num_, den_, true); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(std::string_view var = "t") const;

 private:
  RatFunc(UniPoly num, UniPoly den, bool /*already_reduced*/)
      : num_(std::move(num)), den_(std::move(den)) {}
  UniPoly num_;
  UniPoly den_;
};

inline bool is_zero(const RatFunc& v) { return v.is_zero(); }
inline bool is_one(const RatFunc& v) { return v == RatFunc(Rat(1)); }
inline RatFunc one_like(const RatFunc&) { return RatFunc(Rat(1)); }
inline RatFunc mul_int(const RatFunc& v, std::int64_t k) {
  return v * RatFunc(Rat(static_cast<long>(k)));
}
RatFunc inverse(const RatFunc& v);
std::string to_string(const RatFunc& v);

/// Non-negative integer or +infinity.
struct Valuation {
  bool infinite = false;
  long value = 0;

  static Valuation inf() { return {true, 0}; }
  static Valuation of(long v) { return {false, v}; }
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite || b.infinite) return static_cast<int>(a.infinite) <=> static_cast<int>(b.infinite);
    return a.value <=> b.value;
  }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite || b.infinite) return inf();
    return of(a.value + b.value);
  }
  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

// p-adic valuation of a rational (may be negative); +inf for zero.
Valuation padic_valuation(const Rat& v, const BigInt& p);
// t-adic valuation at 0 of a rational function; +inf for zero.
Valuation ord0_valuation(const RatFunc& v);

bool is_prime_trial(const BigInt& n);

class DvrModel {
 public:
  enum class Kind { kMixed, kEquiChar0 };

  static DvrModel mixed(const BigInt& p);
  static DvrModel equichar0() { return DvrModel(Kind::kEquiChar0, BigInt(0)); }

  Kind kind() const { return kind_; }
  bool is_mixed() const { return kind_ == Kind::kMixed; }
  // p for MixedChar, 0 for EquiChar0.
  const BigInt& residue_characteristic() const { return p_; }
  std::uint32_t p_u32() const { return static_cast<std::uint32_t>(p_.get_ui()); }
  // Reserved spelling of the uniformizer in polynomial strings.
  std::string_view pi_symbol() const { return is_mixed() ? "p" : "t"; }

  friend bool operator==(const DvrModel& a, const DvrModel& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  DvrModel(Kind kind, BigInt p) : kind_(kind), p_(std::move(p)) {}
  Kind kind_;
  BigInt p_;
};

/// Element of V under one of the two models; constructed only with
/// non-negative valuation.
class DvrElement {
 public:
  DvrElement(const DvrModel& model, Rat value);
  DvrElement(const DvrModel& model, RatFunc value);

  const DvrModel& model() const { return model_; }
  const Rat& as_rat() const { return std::get<Rat>(value_); }
  const RatFunc& as_ratfunc() const { return std::get<RatFunc>(value_); }

  friend DvrElement operator+(const DvrElement& a, const DvrElement& b);
  friend DvrElement operator-(const DvrElement& a, const DvrElement& b);
  friend DvrElement operator*(const DvrElement& a, const DvrElement& b);
  friend bool operator==(const DvrElement& a, const DvrElement& b) {
    return a.model_ == b.model_ && a.value_ == b.value_;
  }

  std::string to_string() const;

 private:
  DvrModel model_;
  std::variant<Rat, RatFunc> value_;
};

Valuation valuation(const DvrElement& e, const DvrModel& model);

// Residue field element: F_p for MixedChar, Q for EquiChar0.
using ResidueElement = std::variant<ModP, Rat>;
ResidueElement reduce_mod_pi(const DvrElement& e, const DvrModel& model);

// Parses "12", "7/3" (MixedChar) or a t-expression such as "t^3/(1+t)".
DvrElement parse_dvr_element(std::string_view text, const DvrModel& model);

// Image in F_p of a rational with p-adic valuation >= 0.
ModP reduce_rat_mod_p(const Rat& v, std::uint32_t p);
// Image in Z/q of a rational whose denominator is coprime to q.
std::uint64_t reduce_rat_mod(const Rat& v, std::uint64_t q);

/// Field descriptors used where a ring context is needed to manufacture
/// constants (Groebner engine, parsers, fibers).
struct RationalField {
  using Elem = Rat;
  Elem zero() const { return Rat(0); }
  Elem one() const { return Rat(1); }
  Elem from_rat(const Rat& v) const { return v; }
  std::string name() const { return "Q"; }
};

struct PrimeField {
  using Elem = ModP;
  std::uint32_t p = 2;
  explicit PrimeField(std::uint32_t prime);
  Elem zero() const { return ModP::raw(0, p); }
  Elem one() const { return ModP::raw(1, p); }
  Elem from_rat(const Rat& v) const { return reduce_rat_mod_p(v, p); }
  std::string name() const { return "F_" + std::to_string(p); }
};

struct RatFuncField {
  using Elem = RatFunc;
  Elem zero() const { return RatFunc(Rat(0)); }
  Elem one() const { return RatFunc(Rat(1)); }
  Elem from_rat(const Rat& v) const { return RatFunc(v); }
  std::string name() const { return "Q(t)"; }
};

}  // namespace logchart
