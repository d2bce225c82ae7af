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


// Independent oracles shared by the unit tests and the acceptance binary.
// None of them calls the routine it checks.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "logchart/monoid.hpp"
#include "logchart/poly.hpp"
#include "logchart/snf.hpp"
#include "test_support.hpp"

namespace logchart::testing {

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Expands a(x_1 - x_n^e_1, ..., x_n) term by term through the binomial
// theorem and reports whether the top x_n-degree part is a nonzero constant.
template <class C, class FromInt>
bool oracle_monic(const Poly<C>& a, const std::vector<Exponent>& e, FromInt from_int) {
  const std::size_t n = a.nvars();
  std::map<std::vector<Exponent>, C> out;
  for (const auto& [mono, c] : a.terms()) {
    std::vector<std::pair<std::vector<Exponent>, C>> partial{{std::vector<Exponent>(n, 0), c}};
    partial.front().first[n - 1] = mono[n - 1];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<std::pair<std::vector<Exponent>, C>> next;
      for (const auto& [m, v] : partial) {
        for (Exponent k = 0; k <= mono[i]; ++k) {
          auto m2 = m;
          m2[i] += k;
          m2[n - 1] += (mono[i] - k) * e[i];
          std::int64_t sign = (mono[i] - k) % 2 == 0 ? 1 : -1;
          next.emplace_back(m2, v * from_int(sign * binomial(mono[i], k)));
        }
      }
      partial = std::move(next);
    }
    for (auto& [m, v] : partial) {
      auto it = out.find(m);
      if (it == out.end()) out.emplace(m, v);
      else it->second = it->second + v;
    }
  }
  Exponent top = -1;
  for (const auto& [m, v] : out)
    if (!(v == from_int(0))) top = std::max(top, m[n - 1]);
  if (top < 0) return false;
  for (const auto& [m, v] : out) {
    if (v == from_int(0) || m[n - 1] != top) continue;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (m[i] != 0) return false;
  }
  return true;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  IntMatrix m(r, c);
  // Sparse-ish and low-rank cases show up often enough to matter.
  bool sparse = uniform(rng, 0, 3) == 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = (sparse && uniform(rng, 0, 1)) ? 0 : uniform(rng, -20, 20);
  if (r > 1 && uniform(rng, 0, 4) == 0)
    for (std::size_t j = 0; j < c; ++j) m.at(r - 1, j) = 2 * m.at(0, j);
  return m;
}

// U A W = D with U, W unimodular, D diagonal with a positive divisibility chain.
inline bool snf_invariants_hold(const IntMatrix& a, const SnfResult& s) {
  bool ok = s.u * a * s.w == s.d;
  ok = ok && abs(s.u.determinant()) == 1 && abs(s.w.determinant()) == 1;
  ok = ok && s.u * s.u_inv == IntMatrix::identity(a.rows()) && s.w * s.w_inv == IntMatrix::identity(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      ok = ok && ((i == j && i < s.rank) ? s.d.at(i, j) > 0 : s.d.at(i, j) == 0);
  for (std::size_t i = 0; i + 1 < s.rank; ++i)
    ok = ok && mpz_divisible_p(s.invariants[i + 1].get_mpz_t(), s.invariants[i].get_mpz_t());
  return ok;
}

// Oracle 1: d_1 * ... * d_k equals the gcd of all k x k minors.
inline std::vector<BigInt> determinantal_divisors_3x3(const IntMatrix& a) {
  std::vector<BigInt> out;
  for (std::size_t k = 1; k <= 3; ++k) {
    BigInt g(0);
    std::vector<std::size_t> idx{0, 1, 2};
    for (unsigned rows = 0; rows < 8; ++rows) {
      if (__builtin_popcount(rows) != static_cast<int>(k)) continue;
      for (unsigned cols = 0; cols < 8; ++cols) {
        if (__builtin_popcount(cols) != static_cast<int>(k)) continue;
        IntMatrix minor(k, k);
        std::size_t mi = 0;
        for (std::size_t i = 0; i < 3; ++i) {
          if (!(rows >> i & 1U)) continue;
          std::size_t mj = 0;
          for (std::size_t j = 0; j < 3; ++j) {
            if (!(cols >> j & 1U)) continue;
            minor.at(mi, mj++) = a.at(i, j);
          }
          ++mi;
        }
        BigInt det = minor.determinant();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      }
    }
    out.push_back(g);
  }
  return out;
}

// Oracle 2: diagonalization by extended-gcd 2x2 unimodular row and column
// operations on int64 data, followed by the gcd/lcm fix-up of the diagonal.
inline std::vector<long> gcd_reduction_diagonal(std::vector<std::vector<long>> m) {
  const std::size_t n = m.size();
  auto xgcd = [](long a, long b, long& x, long& y) {
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
      long q = a / b;
      long t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
      t = y0 - q * y1;
      y0 = y1;
      y1 = t;
    }
    x = x0;
    y = y0;
    return a;
  };
  for (std::size_t t = 0; t < n; ++t) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (m[i][t] == 0) continue;
        long x = 1, y = 0;
        // Plain elimination when the pivot divides, so |pivot| strictly drops otherwise.
        long g = (m[t][t] != 0 && m[i][t] % m[t][t] == 0) ? m[t][t] : xgcd(m[t][t], m[i][t], x, y);
        long a = m[t][t] / g, b = m[i][t] / g;
        for (std::size_t j = 0; j < n; ++j) {
          long top = x * m[t][j] + y * m[i][j];
          long bot = -b * m[t][j] + a * m[i][j];
          m[t][j] = top;
          m[i][j] = bot;
        }
        changed = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (m[t][j] == 0) continue;
        long x = 1, y = 0;
        long g = (m[t][t] != 0 && m[t][j] % m[t][t] == 0) ? m[t][t] : xgcd(m[t][t], m[t][j], x, y);
        long a = m[t][t] / g, b = m[t][j] / g;
        for (std::size_t i = 0; i < n; ++i) {
          long left = x * m[i][t] + y * m[i][j];
          long right = -b * m[i][t] + a * m[i][j];
          m[i][t] = left;
          m[i][j] = right;
        }
        changed = true;
      }
    }
  }
  std::vector<long> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = std::labs(m[i][i]);
  // Zeros last, then enforce divisibility pairwise.
  std::stable_partition(d.begin(), d.end(), [](long v) { return v != 0; });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i] == 0 || d[j] == 0) continue;
      long g = std::gcd(d[i], d[j]);
      long l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

inline bool in_lattice_line(const IVec& v, const IVec& rho) {
  // v = q * rho for some integer q.
  std::int64_t q = 0;
  bool set = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (rho[i] == 0) {
      if (v[i] != 0) return false;
      continue;
    }
    if (v[i] % rho[i] != 0) return false;
    if (!set) {
      q = v[i] / rho[i];
      set = true;
    } else if (v[i] / rho[i] != q) {
      return false;
    }
  }
  return true;
}

// classify and section are mutually inverse up to multiples of rho, rho
// classifies to zero, and the chi0 basis survives the round trip.
inline bool round_trip_holds(const AffineMonoid& p, const IVec& rho) {
  auto dec = decompose_quotient(p, rho);
  bool ok = dec.classify(rho) == dec.zero();
  for (const auto& g : p.generators()) {
    ClassCoords c = dec.classify(g);
    IVec back = dec.section(c);
    IVec diff(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) diff[i] = g[i] - back[i];
    ok = ok && in_lattice_line(diff, rho) && dec.classify(back) == c;
  }
  for (std::size_t i = 0; i < dec.dimension(); ++i) ok = ok && dec.classify(dec.section(dec.chi0(i))) == dec.chi0(i);
  return ok;
}

// One-variable finiteness case: F[x]/I over F[f_1..f_d] is finite iff I != 0
// or some f_j is nonconstant (x is then a root of the monic rescaling of
// f_j(X) - t_j). Every list entry lives in the one-variable ring.
struct UnivariateCase {
  std::vector<Poly<Rat>> ideal, f;
  bool expected = false;
};

inline UnivariateCase random_univariate_case(std::mt19937_64& rng) {
  auto c = [](std::mt19937_64& r) { return uniform(r, 0, 2) == 0 ? Rat(0) : random_rat(r, 4); };
  UnivariateCase out;
  int ni = static_cast<int>(uniform(rng, 0, 2));
  int nf = static_cast<int>(uniform(rng, 0, 2));
  for (int j = 0; j < ni; ++j) {
    Poly<Rat> g = random_poly<Rat>(rng, 1, 4, 3, c) + Poly<Rat>(1);
    if (!g.is_zero()) out.ideal.push_back(g);
  }
  for (int j = 0; j < nf; ++j) out.f.push_back(random_poly<Rat>(rng, 1, 3, 3, c) + Poly<Rat>(1));
  bool f_nonconstant = std::any_of(out.f.begin(), out.f.end(), [](const auto& g) { return g.total_degree() > 0; });
  out.expected = !out.ideal.empty() || f_nonconstant;
  return out;
}

}  // namespace logchart::testing
