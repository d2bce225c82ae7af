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

// Sparse multivariate polynomials over any coefficient type from coeff.hpp,
// plus the presentation types built on them.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logchart/coeff.hpp"

namespace logchart {

using Exponent = std::int64_t;
using Monomial = std::vector<Exponent>;

Exponent checked_add(Exponent a, Exponent b);
Exponent checked_mul(Exponent a, Exponent b);
Exponent checked_pow(Exponent base, Exponent e);

inline Exponent monomial_degree(const Monomial& m) {
  Exponent d = 0;
  for (Exponent e : m) d = checked_add(d, e);
  return d;
}

/// Ordered list of distinct variable names; positions are the identity of
/// a variable everywhere else.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;
  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  std::vector<std::string> names_;
};

template <class C>
class Poly {
 public:
  using Coeff = C;
  // std::less on exponent vectors: lex with variable 0 most significant.
  using TermMap = std::map<Monomial, C>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const C& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i, const C& one) {
    Monomial m(nvars, 0);
    m.at(i) = 1;
    Poly p(nvars);
    p.add_term(m, one);
    return p;
  }
  static Poly term(Monomial m, const C& c) {
    Poly p(m.size());
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
  }
  // Coefficient of the monomial, if present.
  const C* coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? nullptr : &it->second;
  }
  // -1 for the zero polynomial.
  Exponent total_degree() const {
    Exponent d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }
  Exponent degree_in(std::size_t i) const {
    Exponent d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
    return d;
  }
  // Any coefficient; used to manufacture constants of the same ring.
  const C& some_coeff() const {
    if (terms_.empty()) fail(ErrorCode::kZeroPolynomial, "no coefficient in the zero polynomial");
    return terms_.begin()->second;
  }

  void add_term(const Monomial& m, const C& c) {
    if (logchart::is_zero(c)) return;
    if (m.size() != nvars_) fail(ErrorCode::kInvalidArgument, "exponent vector length mismatch");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (logchart::is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly r(a.nvars_);
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = checked_add(ma[i], mb[i]);
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const C& s) const {
    Poly r(nvars_);
    if (logchart::is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }
  Poly times_monomial(const Monomial& mono, const C& s) const {
    Poly r(nvars_);
    Monomial m(nvars_);
    for (const auto& [ma, c] : terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = checked_add(ma[i], mono[i]);
      r.add_term(m, c * s);
    }
    return r;
  }
  // k = 0 needs a coefficient to build 1; the zero polynomial to the 0 is 1
  // only when `one` is supplied.
  Poly pow(std::uint64_t k, const std::optional<C>& one = std::nullopt) const {
    if (k == 0) return constant(nvars_, one ? *one : one_like(some_coeff()));
    Poly base = *this;
    Poly acc;
    bool have = false;
    while (k > 0) {
      if (k & 1U) {
        acc = have ? acc * base : base;
        have = true;
      }
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Poly& o) const {
    if (o.nvars_ != nvars_) fail(ErrorCode::kInvalidArgument, "polynomials over different variable sets");
  }
  std::size_t nvars_ = 0;
  TermMap terms_;
};

template <class D, class C, class Fn>
Poly<D> map_coefficients(const Poly<C>& f, Fn&& fn) {
  Poly<D> r(f.nvars());
  for (const auto& [m, c] : f.terms()) r.add_term(m, fn(c));
  return r;
}

// Moves variable i to position target[i] of a ring with new_nvars variables.
template <class C>
Poly<C> remap_variables(const Poly<C>& f, const std::vector<std::size_t>& target, std::size_t new_nvars) {
  Poly<C> r(new_nvars);
  for (const auto& [m, c] : f.terms()) {
    Monomial n(new_nvars, 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      n.at(target.at(i)) = checked_add(n[target[i]], m[i]);
    }
    r.add_term(n, c);
  }
  return r;
}

/// Ring homomorphism x_i -> images[i]; every image lives in the same target
/// ring (target_nvars variables).
template <class C>
Poly<C> substitute(const Poly<C>& f, const std::vector<Poly<C>>& images, std::size_t target_nvars) {
  if (images.size() != f.nvars()) fail(ErrorCode::kInvalidArgument, "substitution must assign every variable");
  Poly<C> result(target_nvars);
  if (f.is_zero()) return result;
  // Powers are cached per variable; exponents in the corpus repeat a lot.
  std::vector<std::map<Exponent, Poly<C>>> cache(images.size());
  auto power = [&](std::size_t i, Exponent e) -> const Poly<C>& {
    auto it = cache[i].find(e);
    if (it != cache[i].end()) return it->second;
    Poly<C> v = images[i].is_zero() ? Poly<C>(target_nvars)
                                    : images[i].pow(static_cast<std::uint64_t>(e));
    return cache[i].emplace(e, std::move(v)).first->second;
  };
  for (const auto& [m, c] : f.terms()) {
    Poly<C> t = Poly<C>::constant(target_nvars, c);
    for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i) {
      if (m[i] == 0) continue;
      t = t * power(i, m[i]);
    }
    result += t;
  }
  return result;
}

template <class C>
Poly<C> derivative(const Poly<C>& f, std::size_t i) {
  Poly<C> r(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (m[i] == 0) continue;
    Monomial n = m;
    n[i] -= 1;
    r.add_term(n, mul_int(c, m[i]));
  }
  return r;
}

/// Coefficient of the top power of variable i, as a polynomial in the other
/// variables (same ring, exponent of i set to 0).
template <class C>
Poly<C> leading_coefficient_in(const Poly<C>& f, std::size_t i) {
  if (f.is_zero()) fail(ErrorCode::kZeroPolynomial, "leading coefficient of zero");
  Exponent top = f.degree_in(i);
  Poly<C> r(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (m[i] != top) continue;
    Monomial n = m;
    n[i] = 0;
    r.add_term(n, c);
  }
  return r;
}

// Coefficient rendering used by to_string.
struct CoeffText {
  std::string magnitude;  // without sign; empty means 1
  bool negative = false;
  bool is_one = false;
};
CoeffText coeff_text(const Rat& c);
CoeffText coeff_text(const ModP& c);
CoeffText coeff_text(const RatFunc& c);

// Terms in descending lex order (variable 0 most significant), constant last,
// e.g. "x*y - y^5 - 2".
template <class C>
std::string to_string(const Poly<C>& f, const VarSet& vars) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    CoeffText ct = coeff_text(c);
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.name(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (first) {
      if (ct.negative) out += "-";
    } else {
      out += ct.negative ? " - " : " + ";
    }
    if (mono.empty()) {
      out += ct.is_one ? "1" : ct.magnitude;
    } else {
      if (!ct.is_one) out += ct.magnitude + "*";
      out += mono;
    }
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing. The uniformizer is spelled "p" (MixedChar) or "t" (EquiChar0) and
// may not be used as a variable name.

Poly<Rat> parse_poly_q(std::string_view text, const VarSet& vars);
Poly<Rat> parse_poly_mixed(std::string_view text, const VarSet& vars, const BigInt& p);
Poly<RatFunc> parse_poly_equi(std::string_view text, const VarSet& vars);
void check_not_reserved(const VarSet& vars, const DvrModel& model);

// ---------------------------------------------------------------------------
// Content, fibers

/// f / pi^v with v the minimal coefficient valuation.
std::pair<Poly<Rat>, long> content_normalize(const Poly<Rat>& f, const DvrModel& model);
std::pair<Poly<RatFunc>, long> content_normalize(const Poly<RatFunc>& f, const DvrModel& model);

// Special fiber: coefficientwise reduction mod pi.
Poly<ModP> special_fiber(const Poly<Rat>& f, const DvrModel& model);
Poly<Rat> special_fiber(const Poly<RatFunc>& f, const DvrModel& model);
// Generic fiber: the coefficients already live in K.
inline const Poly<Rat>& generic_fiber(const Poly<Rat>& f) { return f; }
inline const Poly<RatFunc>& generic_fiber(const Poly<RatFunc>& f) { return f; }

// Primitive V-multiple of a K-polynomial: clears denominators and divides by
// the content so some coefficient is a unit of V.
Poly<Rat> clear_denominators(const Poly<Rat>& f);
Poly<RatFunc> clear_denominators(const Poly<RatFunc>& f);

// ---------------------------------------------------------------------------
// Presentations

template <class C>
struct Ideal {
  std::vector<Poly<C>> gens;

  Ideal() = default;
  explicit Ideal(std::vector<Poly<C>> g) {
    for (auto& p : g)
      if (!p.is_zero()) gens.push_back(std::move(p));
  }
};

/// R = V[x_1..x_n] / I. Flatness over V is recorded as an assertion only.
template <class C>
struct QuotientPresentation {
  VarSet vars;
  Ideal<C> ideal;
  DvrModel model = DvrModel::equichar0();
  bool flat_asserted = true;

  std::size_t nvars() const { return vars.size(); }
};

/// Rows are the module generators dx_1..dx_n, columns the relations; the
/// cokernel is the module presented.
template <class C>
struct PresentationMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<Poly<C>>> columns;
};

/// Columns: d g_j for every ideal generator, then d f_l for every map entry.
template <class C>
PresentationMatrix<C> jacobian_presentation(const QuotientPresentation<C>& pres,
                                            const std::vector<Poly<C>>& f) {
  PresentationMatrix<C> pm;
  pm.rows = pres.nvars();
  auto column = [&](const Poly<C>& g) {
    std::vector<Poly<C>> col;
    col.reserve(pm.rows);
    for (std::size_t i = 0; i < pm.rows; ++i) col.push_back(derivative(g, i));
    return col;
  };
  for (const auto& g : pres.ideal.gens) pm.columns.push_back(column(g));
  for (const auto& g : f) pm.columns.push_back(column(g));
  return pm;
}

}  // namespace logchart
