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

// Buchberger's algorithm over exact fields (F_p, Q, Q(t)) with the
// Gebauer-Moeller installation of both Buchberger criteria, normal-strategy
// pair selection, and a configurable budget. Output bases are reduced and
// therefore canonical for (ideal, order).

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "logchart/poly.hpp"

namespace logchart {

class MonomialOrder {
 public:
  enum class Kind { kLex, kGrevlex };
  struct Block {
    std::vector<std::size_t> vars;
    Kind kind = Kind::kGrevlex;
  };

  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::size_t nvars);
  // Blocks are compared left to right; each must be non-empty and together
  // they must cover 0..nvars-1 exactly once.
  static MonomialOrder block(std::vector<Block> blocks, std::size_t nvars);

  // Sign of (a - b) in the order.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::string describe() const;

 private:
  MonomialOrder(std::vector<Block> blocks, std::size_t nvars) : blocks_(std::move(blocks)), nvars_(nvars) {}
  std::vector<Block> blocks_;
  std::size_t nvars_ = 0;
};

struct GbBudget {
  std::size_t max_pairs = 50000;
  Exponent max_degree = 256;
};

struct GbStats {
  std::size_t pairs_reduced = 0;
  std::size_t pairs_skipped = 0;
  std::size_t zero_reductions = 0;
};

namespace gb_detail {

template <class C>
using Terms = std::vector<std::pair<Monomial, C>>;

template <class C>
Terms<C> sorted_terms(const Poly<C>& f, const MonomialOrder& ord) {
  Terms<C> t(f.terms().begin(), f.terms().end());
  std::sort(t.begin(), t.end(), [&](const auto& a, const auto& b) { return ord.greater(a.first, b.first); });
  return t;
}

template <class C>
Poly<C> to_poly(const Terms<C>& t, std::size_t nvars) {
  Poly<C> p(nvars);
  for (const auto& [m, c] : t) p.add_term(m, c);
  return p;
}

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

// a[from..] - c * x^shift * b[1..]; the leading terms are assumed to cancel.
template <class C>
Terms<C> subtract_multiple(const Terms<C>& a, std::size_t from, const C& c, const Monomial& shift,
                           const Terms<C>& b, const MonomialOrder& ord) {
  Terms<C> out;
  out.reserve(a.size() - from + b.size());
  std::size_t i = from, j = 1;
  Monomial m(shift.size());
  while (i < a.size() || j < b.size()) {
    if (j < b.size()) {
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = b[j].first[k] + shift[k];
    }
    int cmp = i >= a.size() ? -1 : (j >= b.size() ? 1 : ord.compare(a[i].first, m));
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.emplace_back(m, -(c * b[j].second));
      ++j;
    } else {
      C v = a[i].second - c * b[j].second;
      if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// Full reduction of f by monic reducers.
template <class C>
Terms<C> reduce(Terms<C> work, const std::vector<const Terms<C>*>& reducers, const MonomialOrder& ord) {
  Terms<C> rem;
  std::size_t pos = 0;
  Monomial shift;
  while (pos < work.size()) {
    const Monomial& lm = work[pos].first;
    const Terms<C>* hit = nullptr;
    for (const auto* g : reducers) {
      if (divides(g->front().first, lm)) {
        hit = g;
        break;
      }
    }
    if (hit == nullptr) {
      rem.push_back(std::move(work[pos]));
      ++pos;
      continue;
    }
    shift.assign(lm.size(), 0);
    for (std::size_t k = 0; k < lm.size(); ++k) shift[k] = lm[k] - hit->front().first[k];
    C c = work[pos].second;
    work = subtract_multiple(work, pos + 1, c, shift, *hit, ord);
    pos = 0;
  }
  return rem;
}

// Reduces only the leading term until no reducer divides it.
template <class C>
Terms<C> top_reduce(Terms<C> work, const std::vector<const Terms<C>*>& reducers, const MonomialOrder& ord) {
  Monomial shift;
  while (!work.empty()) {
    const Monomial& lm = work.front().first;
    const Terms<C>* hit = nullptr;
    for (const auto* g : reducers) {
      if (divides(g->front().first, lm)) {
        hit = g;
        break;
      }
    }
    if (hit == nullptr) break;
    shift.assign(lm.size(), 0);
    for (std::size_t k = 0; k < lm.size(); ++k) shift[k] = lm[k] - hit->front().first[k];
    C c = work.front().second;
    work = subtract_multiple(work, 1, c, shift, *hit, ord);
  }
  return work;
}

template <class C>
void make_monic(Terms<C>& t) {
  if (t.empty() || is_one(t.front().second)) return;
  C inv = inverse(t.front().second);
  for (auto& [m, c] : t) c = c * inv;
}

template <class C>
Terms<C> spoly(const Terms<C>& f, const Terms<C>& g, const MonomialOrder& ord) {
  Monomial l = lcm(f.front().first, g.front().first);
  Monomial sf(l.size()), sg(l.size());
  for (std::size_t k = 0; k < l.size(); ++k) {
    sf[k] = l[k] - f.front().first[k];
    sg[k] = l[k] - g.front().first[k];
  }
  Terms<C> a;
  a.reserve(f.size());
  for (const auto& [m, c] : f) {
    Monomial n(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) n[k] = m[k] + sf[k];
    a.emplace_back(std::move(n), c);
  }
  // f and g are monic so the leading coefficients cancel with factor 1.
  return subtract_multiple(a, 1, one_like(f.front().second), sg, g, ord);
}

}  // namespace gb_detail

template <class C>
class GroebnerBasis {
 public:
  GroebnerBasis(MonomialOrder order, std::size_t nvars, std::vector<gb_detail::Terms<C>> basis, GbStats stats)
      : order_(std::move(order)), nvars_(nvars), basis_(std::move(basis)), stats_(stats) {}

  const MonomialOrder& order() const { return order_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return basis_.size(); }
  bool is_zero_ideal() const { return basis_.empty(); }
  bool is_unit_ideal() const {
    return basis_.size() == 1 && monomial_degree(basis_.front().front().first) == 0;
  }
  const Monomial& leading_monomial(std::size_t i) const { return basis_.at(i).front().first; }
  const gb_detail::Terms<C>& sorted(std::size_t i) const { return basis_.at(i); }
  Poly<C> element(std::size_t i) const { return gb_detail::to_poly(basis_.at(i), nvars_); }
  std::vector<Poly<C>> elements() const {
    std::vector<Poly<C>> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) out.push_back(element(i));
    return out;
  }
  const GbStats& stats() const { return stats_; }

  Poly<C> normal_form(const Poly<C>& f) const {
    std::vector<const gb_detail::Terms<C>*> red;
    for (const auto& b : basis_) red.push_back(&b);
    return gb_detail::to_poly(gb_detail::reduce(gb_detail::sorted_terms(f, order_), red, order_), nvars_);
  }
  bool contains(const Poly<C>& f) const { return normal_form(f).is_zero(); }

 private:
  MonomialOrder order_;
  std::size_t nvars_;
  std::vector<gb_detail::Terms<C>> basis_;  // sorted by leading monomial, ascending
  GbStats stats_;
};

template <class C>
GroebnerBasis<C> buchberger(const std::vector<Poly<C>>& gens, const MonomialOrder& ord,
                            const GbBudget& budget = {}) {
  using namespace gb_detail;
  const std::size_t n = ord.nvars();
  for (const auto& g : gens)
    if (g.nvars() != n) fail(ErrorCode::kInvalidArgument, "generator ring does not match the monomial order");

  // degree is the sugar of the pair: the largest total degree the s-poly
  // would have if no cancellation took place.
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    Exponent degree;
  };
  std::vector<Terms<C>> polys;
  std::vector<Exponent> sugar;
  std::vector<bool> active;
  std::vector<Pair> pairs;
  GbStats stats;

  auto update = [&](std::size_t h) {
    const Monomial& lh = polys[h].front().first;
    std::vector<Pair> cand;
    for (std::size_t g = 0; g < h; ++g) {
      if (!active[g]) continue;
      Monomial l = lcm(polys[g].front().first, lh);
      Exponent ld = monomial_degree(l);
      Exponent deg = std::max(sugar[g] + ld - monomial_degree(polys[g].front().first),
                              sugar[h] + ld - monomial_degree(lh));
      cand.push_back({g, h, std::move(l), deg});
    }
    std::vector<Pair> kept;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      const Pair& p = cand[k];
      bool keep = coprime(polys[p.i].front().first, lh);
      if (!keep) {
        keep = true;
        for (std::size_t r = k + 1; r < cand.size() && keep; ++r)
          if (divides(cand[r].lcm, p.lcm)) keep = false;
        for (std::size_t r = 0; r < kept.size() && keep; ++r)
          if (divides(kept[r].lcm, p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
    }
    std::vector<Pair> next;
    for (auto& p : pairs) {
      bool drop = divides(lh, p.lcm) && lcm(polys[p.i].front().first, lh) != p.lcm &&
                  lcm(polys[p.j].front().first, lh) != p.lcm;
      if (drop) {
        ++stats.pairs_skipped;
      } else {
        next.push_back(std::move(p));
      }
    }
    for (auto& p : kept) {
      if (coprime(polys[p.i].front().first, lh)) {
        ++stats.pairs_skipped;
      } else {
        next.push_back(std::move(p));
      }
    }
    pairs = std::move(next);
    for (std::size_t g = 0; g < h; ++g)
      if (active[g] && divides(lh, polys[g].front().first)) active[g] = false;
  };

  auto add = [&](Terms<C> t, Exponent s) {
    make_monic(t);
    Exponent deg = 0;
    for (const auto& [m, c] : t) deg = std::max(deg, monomial_degree(m));
    if (deg > budget.max_degree)
      fail(ErrorCode::kBudgetExceeded, "basis element of degree " + std::to_string(deg) + " exceeds cap " +
                                           std::to_string(budget.max_degree));
    polys.push_back(std::move(t));
    sugar.push_back(std::max(s, deg));
    active.push_back(true);
    update(polys.size() - 1);
  };

  auto active_reducers = [&] {
    std::vector<const Terms<C>*> red;
    for (std::size_t g = 0; g < polys.size(); ++g)
      if (active[g]) red.push_back(&polys[g]);
    return red;
  };

  for (const auto& g : gens) {
    Terms<C> h = top_reduce(sorted_terms(g, ord), active_reducers(), ord);
    if (!h.empty()) add(std::move(h), 0);
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      int c = ord.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    Pair p = std::move(*best);
    pairs.erase(best);
    if (++stats.pairs_reduced > budget.max_pairs)
      fail(ErrorCode::kBudgetExceeded, "pair reductions exceed " + std::to_string(budget.max_pairs));
    Terms<C> h = top_reduce(spoly(polys[p.i], polys[p.j], ord), active_reducers(), ord);
    if (h.empty()) {
      ++stats.zero_reductions;
      continue;
    }
    add(std::move(h), p.degree);
  }

  // Every added element is top-reduced against the active set and evicts the
  // elements its leading monomial divides, so the active set is minimal;
  // tails are reduced once at the end.
  std::vector<Terms<C>> basis;
  for (std::size_t g = 0; g < polys.size(); ++g)
    if (active[g]) basis.push_back(polys[g]);
  std::sort(basis.begin(), basis.end(),
            [&](const auto& a, const auto& b) { return ord.greater(b.front().first, a.front().first); });
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<const Terms<C>*> red;
    for (std::size_t r = 0; r < basis.size(); ++r)
      if (r != k) red.push_back(&basis[r]);
    Terms<C> tail(basis[k].begin() + 1, basis[k].end());
    Terms<C> reduced = reduce(std::move(tail), red, ord);
    Terms<C> full;
    full.reserve(reduced.size() + 1);
    full.push_back(basis[k].front());
    for (auto& t : reduced) full.push_back(std::move(t));
    basis[k] = std::move(full);
  }
  return GroebnerBasis<C>(ord, n, std::move(basis), stats);
}

/// Elements of the reduced basis for `ord` that avoid every eliminated
/// variable; `ord` must be an elimination order for them.
template <class C>
std::vector<Poly<C>> elimination_ideal(const std::vector<Poly<C>>& gens, const MonomialOrder& ord,
                                       const std::vector<std::size_t>& eliminated, const GbBudget& budget = {}) {
  auto gb = buchberger(gens, ord, budget);
  std::vector<Poly<C>> out;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    bool free = true;
    for (const auto& [m, c] : gb.sorted(i)) {
      for (std::size_t v : eliminated)
        if (m[v] != 0) free = false;
      if (!free) break;
    }
    if (free) out.push_back(gb.element(i));
  }
  return out;
}

struct GbAudit {
  bool spairs_reduce_to_zero = true;
  bool reduced = true;
  bool monic = true;
  std::size_t pairs_checked = 0;
  bool ok() const { return spairs_reduce_to_zero && reduced && monic; }
};

// Exhaustive check of the Buchberger criterion on every pair, without the
// criteria shortcuts used during construction.
template <class C>
GbAudit audit_groebner(const GroebnerBasis<C>& gb) {
  using namespace gb_detail;
  GbAudit a;
  std::vector<const Terms<C>*> red;
  for (std::size_t i = 0; i < gb.size(); ++i) red.push_back(&gb.sorted(i));
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (!is_one(gb.sorted(i).front().second)) a.monic = false;
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (i == j) continue;
      for (const auto& [m, c] : gb.sorted(i))
        if (divides(gb.leading_monomial(j), m)) a.reduced = false;
    }
    for (std::size_t j = i + 1; j < gb.size(); ++j) {
      ++a.pairs_checked;
      if (!reduce(spoly(gb.sorted(i), gb.sorted(j), gb.order()), red, gb.order()).empty())
        a.spairs_reduce_to_zero = false;
    }
  }
  return a;
}

struct FinitenessVerdict {
  bool finite = false;
  // Per x-variable: exponent e with x_i^e a leading monomial, if any.
  std::vector<std::optional<Exponent>> pure_powers;
  std::size_t basis_size = 0;
};

/// Decides whether F[x_1..x_n]/I is a finite module over F[t_1..t_d] acting
/// through t_j -> f_j: with J = I + (t_j - f_j) and a block order that
/// eliminates x first, finite iff every x_i has a pure power x_i^e among the
/// leading monomials of the reduced basis of J.
template <class C>
FinitenessVerdict is_finite_over_image(const std::vector<Poly<C>>& ideal, const std::vector<Poly<C>>& f,
                                       const C& one, const GbBudget& budget = {}) {
  std::size_t n = 0;
  if (!ideal.empty()) n = ideal.front().nvars();
  else if (!f.empty()) n = f.front().nvars();
  for (const auto& g : ideal)
    if (g.nvars() != n) fail(ErrorCode::kInvalidArgument, "ideal generators over different rings");
  for (const auto& g : f)
    if (g.nvars() != n) fail(ErrorCode::kInvalidArgument, "map entries over a different ring");
  const std::size_t d = f.size();
  std::vector<std::size_t> embed(n);
  for (std::size_t i = 0; i < n; ++i) embed[i] = i;
  std::vector<Poly<C>> gens;
  for (const auto& g : ideal) gens.push_back(remap_variables(g, embed, n + d));
  for (std::size_t j = 0; j < d; ++j)
    gens.push_back(Poly<C>::variable(n + d, n + j, one) - remap_variables(f[j], embed, n + d));

  MonomialOrder::Block xb, tb;
  for (std::size_t i = 0; i < n; ++i) xb.vars.push_back(i);
  for (std::size_t j = 0; j < d; ++j) tb.vars.push_back(n + j);
  std::vector<MonomialOrder::Block> blocks;
  if (n > 0) blocks.push_back(xb);
  if (d > 0) blocks.push_back(tb);
  FinitenessVerdict v;
  v.pure_powers.assign(n, std::nullopt);
  if (n == 0) {
    v.finite = true;
    return v;
  }
  auto gb = buchberger(gens, MonomialOrder::block(blocks, n + d), budget);
  v.basis_size = gb.size();
  for (std::size_t k = 0; k < gb.size(); ++k) {
    const Monomial& lm = gb.leading_monomial(k);
    std::size_t support = 0, var = 0;
    for (std::size_t i = 0; i < n + d; ++i)
      if (lm[i] != 0) {
        ++support;
        var = i;
      }
    if (support == 0) {
      for (auto& e : v.pure_powers) e = 0;
      break;
    }
    if (support == 1 && var < n && (!v.pure_powers[var] || *v.pure_powers[var] > lm[var]))
      v.pure_powers[var] = lm[var];
  }
  v.finite = std::all_of(v.pure_powers.begin(), v.pure_powers.end(), [](const auto& e) { return e.has_value(); });
  return v;
}

/// Toric ideal of the monoid algebra: binomials u^{v+} - u^{v-} over a basis
/// of the relation lattice, saturated by (u_1...u_s)^inf through an extra
/// variable z with z*u_1*...*u_s - 1 and elimination of z.
std::vector<Poly<Rat>> toric_ideal(const std::vector<std::vector<BigInt>>& relation_basis, std::size_t nvars,
                                   const GbBudget& budget = {});

}  // namespace logchart
