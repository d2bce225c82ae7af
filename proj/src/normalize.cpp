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

#include "logchart/normalize.hpp"

#include <algorithm>

namespace logchart {

namespace {

template <class C>
struct Fibers;

template <>
struct Fibers<Rat> {
  using Special = ModP;
  static bool model_ok(const DvrModel& m) { return m.is_mixed(); }
  static Rat one() { return Rat(1); }
  static ModP special_one(const DvrModel& m) { return ModP::raw(1, m.p_u32()); }
};

template <>
struct Fibers<RatFunc> {
  using Special = Rat;
  static bool model_ok(const DvrModel& m) { return !m.is_mixed(); }
  static RatFunc one() { return RatFunc(Rat(1)); }
  static Rat special_one(const DvrModel&) { return Rat(1); }
};

template <class C>
bool monic_after_substitution(const Poly<C>& a, std::int64_t n_base, std::int64_t m, const C& one) {
  const std::size_t n = a.nvars();
  auto exps = substitution_exponents(n, n_base, m);
  const auto xn = Poly<C>::variable(n, n - 1, one);
  std::vector<Poly<C>> images;
  for (std::size_t i = 0; i + 1 < n; ++i)
    images.push_back(Poly<C>::variable(n, i, one) - xn.pow(static_cast<std::uint64_t>(exps[i]), one));
  images.push_back(xn);
  Poly<C> lc = leading_coefficient_in(substitute(a, images, n), n - 1);
  return !lc.is_zero() && lc.is_constant();
}

MonomialOrder eliminate_last(std::size_t n) {
  MonomialOrder::Block last{{n - 1}, MonomialOrder::Kind::kLex};
  MonomialOrder::Block rest;
  rest.kind = MonomialOrder::Kind::kGrevlex;
  for (std::size_t i = 0; i + 1 < n; ++i) rest.vars.push_back(i);
  if (rest.vars.empty()) return MonomialOrder::block({last}, n);
  return MonomialOrder::block({last, rest}, n);
}

template <class C>
struct Selected {
  Poly<C> a;
  std::size_t index;
};

// First generator of unit content; failing that, the first nonzero one
// divided by its content, which stays in I when V[x]/I is flat.
template <class C>
Selected<C> select_unit_content(const std::vector<Poly<C>>& gens, const DvrModel& model, bool flat) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    auto [normalized, v] = content_normalize(gens[i], model);
    if (v == 0) return {gens[i], i};
  }
  if (flat) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!gens[i].is_zero()) return {content_normalize(gens[i], model).first, i};
  }
  fail(ErrorCode::kNoUnitContentGenerator,
       gens.empty() ? "relative dimension exceeds d: no relation to eliminate with"
                    : "every generator has positive content valuation");
}

template <class C>
NormalizationResult<C> run_once(const QuotientPresentation<C>& pres, const std::vector<std::size_t>& perm,
                                std::size_t d, std::int64_t n_base, std::int64_t offset, const NormalizationCaps& caps) {
  const std::size_t n = pres.nvars();
  const C one = Fibers<C>::one();
  const auto s_one = Fibers<C>::special_one(pres.model);

  std::vector<std::size_t> to_new(n);
  for (std::size_t k = 0; k < n; ++k) to_new[perm[k]] = k;
  std::vector<Poly<C>> coords;
  for (std::size_t k = 0; k < n; ++k) coords.push_back(Poly<C>::variable(n, perm[k], one));
  std::vector<Poly<C>> ideal;
  for (const auto& g : pres.ideal.gens) ideal.push_back(remap_variables(g, to_new, n));

  NormalizationResult<C> out;
  out.trace.n_base = n_base;
  out.trace.distinguished.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(d));
  std::size_t cur = n;
  while (cur > d) {
    NormalizationStep<C> step;
    step.nvars_before = cur;
    step.n_base = n_base;
    auto sel = select_unit_content(ideal, pres.model, pres.flat_asserted);
    step.a = sel.a;
    step.a_index = sel.index;
    step.m_special = degreetrick_m(special_fiber(sel.a, pres.model), n_base, s_one).m;
    step.m_generic = degreetrick_m(sel.a, n_base, one).m;
    // Monicity at one m does not imply it at a larger one; search upward
    // for an m that works on both fibers.
    const auto a_special = special_fiber(sel.a, pres.model);
    step.m = std::max(step.m_special, step.m_generic) + offset;
    while (!monic_after_substitution(a_special, n_base, step.m, s_one) ||
           !monic_after_substitution(sel.a, n_base, step.m, one))
      ++step.m;
    step.exponents = substitution_exponents(cur, n_base, step.m);
    const std::size_t last = cur - 1;
    step.eliminated = coords[last];
    step.kept_before.assign(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(last));
    for (std::size_t i = 0; i < last; ++i)
      coords[i] += coords[last].pow(static_cast<std::uint64_t>(step.exponents[i]), one);
    coords.pop_back();

    if (last > d) {
      // x_i = z_i - x_last^e_i, then intersect with the ring of the z_i.
      std::vector<Poly<C>> images;
      for (std::size_t i = 0; i < last; ++i)
        images.push_back(Poly<C>::variable(cur, i, one) -
                         Poly<C>::variable(cur, last, one).pow(static_cast<std::uint64_t>(step.exponents[i]), one));
      images.push_back(Poly<C>::variable(cur, last, one));
      std::vector<Poly<C>> sub;
      for (const auto& g : ideal) sub.push_back(substitute(g, images, cur));
      auto elim = elimination_ideal(sub, eliminate_last(cur), {last}, caps.budget);
      std::vector<std::size_t> keep(cur);
      for (std::size_t i = 0; i < cur; ++i) keep[i] = i < last ? i : 0;
      ideal.clear();
      for (const auto& g : elim) ideal.push_back(clear_denominators(remap_variables(g, keep, last)));
      step.next_ideal = ideal;
    }
    out.trace.steps.push_back(std::move(step));
    --cur;
  }
  out.f = std::move(coords);
  return out;
}

}  // namespace

std::vector<Exponent> substitution_exponents(std::size_t nvars, std::int64_t n_base, std::int64_t m) {
  const Exponent base = checked_mul(n_base, m);
  std::vector<Exponent> out;
  for (std::size_t i = 1; i < nvars; ++i) out.push_back(checked_pow(base, static_cast<Exponent>(i)));
  return out;
}

template <class C>
DegreeTrickResult degreetrick_m(const Poly<C>& a, std::int64_t n_base, const C& one) {
  if (a.is_zero()) fail(ErrorCode::kZeroPolynomial, "degree trick on the zero polynomial");
  if (a.nvars() == 0) fail(ErrorCode::kInvalidArgument, "degree trick needs at least one variable");
  if (n_base < 1) fail(ErrorCode::kInvalidArgument, "exponent base N must be positive");
  const Exponent bound = a.total_degree() + 1;
  for (std::int64_t m = 1;; ++m) {
    if (monic_after_substitution(a, n_base, m, one)) return {m, substitution_exponents(a.nvars(), n_base, m)};
    if (m >= bound) fail(ErrorCode::kDomainError, "degree trick exceeded deg(a) + 1");
  }
}

template <class C>
std::pair<FinitenessVerdict, FinitenessVerdict> fiberwise_finite(const QuotientPresentation<C>& pres,
                                                                 const std::vector<Poly<C>>& f,
                                                                 const GbBudget& budget) {
  using S = typename Fibers<C>::Special;
  std::vector<Poly<S>> is, fs;
  for (const auto& g : pres.ideal.gens) is.push_back(special_fiber(g, pres.model));
  for (const auto& g : f) fs.push_back(special_fiber(g, pres.model));
  auto special = is_finite_over_image(is, fs, Fibers<C>::special_one(pres.model), budget);
  auto generic = is_finite_over_image(pres.ideal.gens, f, Fibers<C>::one(), budget);
  return {special, generic};
}

template <class C>
NormalizationResult<C> nagatatrick(const QuotientPresentation<C>& pres, const std::vector<std::size_t>& distinguished,
                                   std::int64_t n_base, const NormalizationCaps& caps) {
  if (!Fibers<C>::model_ok(pres.model)) fail(ErrorCode::kInvalidArgument, "coefficient type does not match the model");
  if (n_base < 1) fail(ErrorCode::kInvalidArgument, "exponent base N must be positive");
  const std::size_t n = pres.nvars(), d = distinguished.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> perm;
  for (std::size_t v : distinguished) {
    if (v >= n || seen[v]) fail(ErrorCode::kInvalidArgument, "distinguished coordinates must be distinct variables");
    seen[v] = 1;
    perm.push_back(v);
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) perm.push_back(v);
  for (const auto& g : pres.ideal.gens)
    if (g.nvars() != n) fail(ErrorCode::kInvalidArgument, "generator over a different ring");

  for (int retry = 0; retry <= caps.retry_cap; ++retry) {
    auto result = run_once(pres, perm, d, n_base, retry, caps);
    auto [special, generic] = fiberwise_finite(pres, result.f, caps.budget);
    result.special = special;
    result.generic = generic;
    result.trace.retries = retry;
    if (special.finite && generic.finite) return result;
  }
  fail(ErrorCode::kRetryExhausted, "fiberwise finiteness still fails after " + std::to_string(caps.retry_cap) +
                                       " retries");
}

template <class C>
bool check_nth_power_form(const NormalizationTrace<C>& trace, const std::vector<Poly<C>>& f, std::size_t nvars) {
  if (f.size() != trace.distinguished.size()) return false;
  const C one = Fibers<C>::one();
  for (std::size_t i = 0; i < f.size(); ++i) {
    Poly<C> expected = Poly<C>::variable(nvars, trace.distinguished[i], one);
    for (const auto& step : trace.steps) {
      if (i >= step.exponents.size()) return false;
      Exponent e = step.exponents[i];
      if (e <= 0 || e % trace.n_base != 0) return false;
      expected += step.eliminated.pow(static_cast<std::uint64_t>(e), one);
    }
    if (!(expected == f[i])) return false;
  }
  return true;
}

template DegreeTrickResult degreetrick_m(const Poly<Rat>&, std::int64_t, const Rat&);
template DegreeTrickResult degreetrick_m(const Poly<ModP>&, std::int64_t, const ModP&);
template DegreeTrickResult degreetrick_m(const Poly<RatFunc>&, std::int64_t, const RatFunc&);
template NormalizationResult<Rat> nagatatrick(const QuotientPresentation<Rat>&, const std::vector<std::size_t>&,
                                              std::int64_t, const NormalizationCaps&);
template NormalizationResult<RatFunc> nagatatrick(const QuotientPresentation<RatFunc>&,
                                                  const std::vector<std::size_t>&, std::int64_t,
                                                  const NormalizationCaps&);
template bool check_nth_power_form(const NormalizationTrace<Rat>&, const std::vector<Poly<Rat>>&, std::size_t);
template bool check_nth_power_form(const NormalizationTrace<RatFunc>&, const std::vector<Poly<RatFunc>>&,
                                   std::size_t);
template std::pair<FinitenessVerdict, FinitenessVerdict> fiberwise_finite(const QuotientPresentation<Rat>&,
                                                                          const std::vector<Poly<Rat>>&,
                                                                          const GbBudget&);
template std::pair<FinitenessVerdict, FinitenessVerdict> fiberwise_finite(const QuotientPresentation<RatFunc>&,
                                                                          const std::vector<Poly<RatFunc>>&,
                                                                          const GbBudget&);

}  // namespace logchart
