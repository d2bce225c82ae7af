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

// Noether normalization over a DVR in which every coordinate change adds a
// polynomial in N-th powers:
//   z_i = x_i + x_n^((N m)^i),  i = 1..n-1,
// with m chosen so a relation becomes monic in x_n on both fibers.
//
// Coefficients are Rat (MixedChar, fibers over F_p and Q) or RatFunc
// (EquiChar0, fibers over Q and Q(t)).

#pragma once

#include <cstdint>
#include <vector>

#include "logchart/groebner.hpp"
#include "logchart/poly.hpp"

namespace logchart {

struct DegreeTrickResult {
  std::int64_t m = 1;
  // Substitution exponents (N m)^i for variables 1..n-1.
  std::vector<Exponent> exponents;
};

/// Least m >= 1 such that x_i -> x_i - x_n^((N m)^i) (i < n) gives `a` a
/// nonzero constant leading coefficient in the last variable x_n. Always
/// m <= deg(a) + 1.
///
/// Errors: ZeroPolynomial, InvalidArgument (no variables or N < 1).
template <class C>
DegreeTrickResult degreetrick_m(const Poly<C>& a, std::int64_t n_base, const C& one);

// (N m)^1, ..., (N m)^(n-1); ExponentOverflow when they leave int64.
std::vector<Exponent> substitution_exponents(std::size_t nvars, std::int64_t n_base, std::int64_t m);

template <class C>
struct NormalizationStep {
  std::size_t nvars_before = 0;
  // The eliminated coordinate and the kept ones, as polynomials in the
  // original variables.
  Poly<C> eliminated;
  std::vector<Poly<C>> kept_before;
  // Relation made monic, in the step's coordinates, and its selection index.
  Poly<C> a;
  std::size_t a_index = 0;
  std::int64_t m = 1, m_special = 1, m_generic = 1;
  std::int64_t n_base = 1;
  std::vector<Exponent> exponents;
  // Relations among the kept coordinates handed to the next step.
  std::vector<Poly<C>> next_ideal;
};

template <class C>
struct NormalizationTrace {
  std::int64_t n_base = 1;
  std::vector<std::size_t> distinguished;
  std::vector<NormalizationStep<C>> steps;
  int retries = 0;
};

template <class C>
struct NormalizationResult {
  std::vector<Poly<C>> f;  // in the original variables
  NormalizationTrace<C> trace;
  FinitenessVerdict special;
  FinitenessVerdict generic;
};

struct NormalizationCaps {
  int retry_cap = 3;
  GbBudget budget;
};

/// Makes V[x]/I fiberwise finite over A^d through f_i = x_{distinguished_i}
/// + y_i, y_i a sum of (N m)^j-th powers of eliminated coordinates. The final
/// f is accepted only after both fiber finiteness tests pass; otherwise every
/// step's m is raised by one, up to retry_cap times.
///
/// Errors: NoUnitContentGenerator, RetryExhausted, BudgetExceeded,
/// ExponentOverflow, InvalidArgument.
template <class C>
NormalizationResult<C> nagatatrick(const QuotientPresentation<C>& pres, const std::vector<std::size_t>& distinguished,
                                   std::int64_t n_base, const NormalizationCaps& caps = {});

/// Re-derives f from the trace: checks that every exponent is a multiple of
/// N and that x_{distinguished_i} + sum_s eliminated_s^(exponent_{s,i})
/// expands to f_i.
template <class C>
bool check_nth_power_form(const NormalizationTrace<C>& trace, const std::vector<Poly<C>>& f, std::size_t nvars);

// Fiber finiteness of V[x]/I over A^d through f, tested over both fields.
template <class C>
std::pair<FinitenessVerdict, FinitenessVerdict> fiberwise_finite(const QuotientPresentation<C>& pres,
                                                                 const std::vector<Poly<C>>& f,
                                                                 const GbBudget& budget = {});

}  // namespace logchart
