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

#include "logchart/certificate.hpp"

#include <functional>
#include <map>

#include "logchart/groebner.hpp"

namespace logchart {

namespace {

using ModTerms = std::map<Monomial, std::uint32_t>;

void require_mixed(const QuotientPresentation<Rat>& pres) {
  if (!pres.model.is_mixed()) fail(ErrorCode::kPreconditionError, "certificates need a mixed-characteristic model");
}

std::uint64_t prime_power(std::uint32_t p, int e) {
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > UINT32_MAX) fail(ErrorCode::kBudgetExceeded, "p^(n+1) does not fit in 32 bits");
  }
  return q;
}

ModTerms reduce_mod(const Poly<Rat>& f, std::uint64_t q) {
  ModTerms out;
  for (const auto& [m, c] : f.terms()) {
    auto r = static_cast<std::uint32_t>(reduce_rat_mod(c, q));
    if (r != 0) out.emplace(m, r);
  }
  return out;
}

// Exponent vectors of total degree <= bound, by degree and then lex.
std::vector<Monomial> monomials_up_to(std::size_t nvars, long bound) {
  std::vector<Monomial> out;
  Monomial m(nvars, 0);
  for (long d = 0; d <= bound; ++d) {
    // All compositions of d into nvars parts.
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
      if (i + 1 == nvars) {
        m[i] = left;
        out.push_back(m);
        return;
      }
      for (long e = left; e >= 0; --e) {
        m[i] = e;
        rec(i + 1, left - e);
      }
    };
    if (nvars == 0) {
      if (d == 0) out.push_back(m);
    } else {
      rec(0, d);
    }
  }
  return out;
}

struct Relation {
  std::vector<ModTerms> components;
};

std::vector<Relation> relations_mod(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f,
                                    std::uint64_t q) {
  const std::size_t n = pres.nvars();
  std::vector<Relation> rel;
  auto jac_column = [&](const Poly<Rat>& g) {
    Relation r;
    for (std::size_t i = 0; i < n; ++i) r.components.push_back(reduce_mod(derivative(g, i), q));
    return r;
  };
  for (const auto& g : pres.ideal.gens) rel.push_back(jac_column(g));
  for (const auto& g : f) rel.push_back(jac_column(g));
  for (const auto& g : pres.ideal.gens) {
    for (std::size_t k = 0; k < n; ++k) {
      Relation r;
      r.components.assign(n, {});
      r.components[k] = reduce_mod(g, q);
      rel.push_back(std::move(r));
    }
  }
  return rel;
}

std::optional<EtaleCertificate> solve_at_bound(const QuotientPresentation<Rat>& pres,
                                               const std::vector<Poly<Rat>>& f, int level, long bound, long cap,
                                               const CertificateCaps& caps) {
  const std::uint32_t p = pres.model.p_u32();
  const unsigned k = static_cast<unsigned>(level) + 1;
  const std::uint64_t q = prime_power(p, static_cast<int>(k));
  const std::size_t n = pres.nvars();
  const auto rel = relations_mod(pres, f, q);
  const auto mults = monomials_up_to(n, bound);

  std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
  auto row_index = [&](std::size_t comp, const Monomial& m) {
    auto [it, inserted] = row_of.try_emplace({comp, m}, row_of.size());
    return it->second;
  };
  for (std::size_t i = 0; i < n; ++i) row_index(i, Monomial(n, 0));
  Monomial shifted(n);
  for (const auto& r : rel)
    for (const auto& mu : mults)
      for (std::size_t comp = 0; comp < n; ++comp)
        for (const auto& [tm, c] : r.components[comp]) {
          for (std::size_t v = 0; v < n; ++v) shifted[v] = mu[v] + tm[v];
          row_index(comp, shifted);
        }
  const std::size_t rows = row_of.size(), unknowns = rel.size() * mults.size();
  if (rows * (unknowns + n) > caps.max_matrix_entries)
    fail(ErrorCode::kBudgetExceeded, "certificate system of " + std::to_string(rows) + " x " +
                                         std::to_string(unknowns) + " exceeds max_matrix_entries");

  const auto qq = static_cast<std::uint32_t>(q);
  kernels::ModMatrix a(rows, unknowns, qq);
  for (std::size_t r = 0; r < rel.size(); ++r)
    for (std::size_t j = 0; j < mults.size(); ++j)
      for (std::size_t comp = 0; comp < n; ++comp)
        for (const auto& [tm, c] : rel[r].components[comp]) {
          for (std::size_t v = 0; v < n; ++v) shifted[v] = mults[j][v] + tm[v];
          std::uint32_t& cell = a.at(row_of.at({comp, shifted}), r * mults.size() + j);
          cell = static_cast<std::uint32_t>((cell + static_cast<std::uint64_t>(c)) % q);
        }
  kernels::ModMatrix rhs(rows, n, qq);
  const auto pn = static_cast<std::uint32_t>(prime_power(p, level) % q);
  for (std::size_t i = 0; i < n; ++i) rhs.at(row_of.at({i, Monomial(n, 0)}), i) = pn;

  auto sol = kernels::solve_mod_prime_power(a, rhs, p, k);
  for (const auto& s : sol)
    if (!s) return std::nullopt;

  EtaleCertificate cert;
  cert.p = p;
  cert.level = level;
  cert.degree_bound = bound;
  cert.degree_cap = cap;
  const std::size_t ngens = pres.ideal.gens.size(), ncols = ngens + f.size();
  for (std::size_t i = 0; i < n; ++i) {
    EtaleWitness w;
    w.target = i;
    auto poly_of = [&](std::size_t r) {
      Poly<Rat> out(n);
      for (std::size_t j = 0; j < mults.size(); ++j) {
        std::uint32_t v = (*sol[i])[r * mults.size() + j];
        if (v != 0) out.add_term(mults[j], Rat(static_cast<unsigned long>(v)));
      }
      return out;
    };
    for (std::size_t r = 0; r < ncols; ++r) w.column_multipliers.push_back(poly_of(r));
    w.ideal_multipliers.assign(ngens, {});
    for (std::size_t g = 0; g < ngens; ++g)
      for (std::size_t comp = 0; comp < n; ++comp) w.ideal_multipliers[g].push_back(poly_of(ncols + g * n + comp));
    cert.witnesses.push_back(std::move(w));
  }
  return cert;
}

Poly<ModP> determinant(const std::vector<std::vector<Poly<ModP>>>& m, std::size_t nvars, std::uint32_t p) {
  const std::size_t n = m.size();
  if (n == 0) return Poly<ModP>::constant(nvars, ModP::raw(1, p));
  if (n == 1) return m[0][0];
  Poly<ModP> acc(nvars);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Poly<ModP>>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly<ModP>> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    Poly<ModP> term = m[0][c] * determinant(minor, nvars, p);
    if (c % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

constexpr std::size_t kMaxMinors = 2000;

}  // namespace

long default_degree_cap(const QuotientPresentation<Rat>& pres, int level) {
  require_mixed(pres);
  long ambient = 1;
  for (const auto& g : pres.ideal.gens) ambient = std::max<long>(ambient, g.total_degree());
  return 2 * static_cast<long>(prime_power(pres.model.p_u32(), level + 1)) + ambient;
}

std::optional<bool> special_fiber_unramified(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f) {
  require_mixed(pres);
  const std::size_t n = pres.nvars();
  const std::uint32_t p = pres.model.p_u32();
  if (n == 0) return true;
  std::vector<std::vector<Poly<ModP>>> cols;
  auto add_column = [&](const Poly<Rat>& g) {
    std::vector<Poly<ModP>> col;
    for (std::size_t i = 0; i < n; ++i) col.push_back(special_fiber(derivative(g, i), pres.model));
    cols.push_back(std::move(col));
  };
  for (const auto& g : pres.ideal.gens) add_column(g);
  for (const auto& g : f) add_column(g);

  std::vector<Poly<ModP>> gens;
  for (const auto& g : pres.ideal.gens) gens.push_back(special_fiber(g, pres.model));
  // Maximal minors: choose n of the columns.
  if (cols.size() >= n) {
    double count = 1;
    for (std::size_t i = 0; i < n; ++i) count = count * static_cast<double>(cols.size() - i) / static_cast<double>(i + 1);
    if (count > kMaxMinors) return std::nullopt;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    while (true) {
      std::vector<std::vector<Poly<ModP>>> m(n, std::vector<Poly<ModP>>(n));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m[r][c] = cols[pick[c]][r];
      auto det = determinant(m, n, p);
      if (!det.is_zero()) gens.push_back(det);
      // Next combination in lex order.
      std::size_t i = n;
      while (i > 0 && pick[i - 1] == cols.size() - n + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  if (gens.empty()) return false;
  return buchberger(gens, MonomialOrder::grevlex(n)).is_unit_ideal();
}

std::optional<EtaleCertificate> certify_at_level(const QuotientPresentation<Rat>& pres,
                                                 const std::vector<Poly<Rat>>& f, int level,
                                                 const CertificateCaps& caps) {
  require_mixed(pres);
  if (level < 0) fail(ErrorCode::kInvalidArgument, "level must be non-negative");
  for (const auto& g : f)
    if (g.nvars() != pres.nvars()) fail(ErrorCode::kInvalidArgument, "map entry over a different ring");
  const long cap = caps.degree_cap ? *caps.degree_cap : default_degree_cap(pres, level);
  // Doubling schedule; a witness within a smaller bound is one within the cap.
  long bound = 0;
  while (true) {
    long b = std::min(bound, cap);
    if (auto cert = solve_at_bound(pres, f, level, b, cap, caps)) return cert;
    if (b >= cap) return std::nullopt;
    bound = bound == 0 ? 1 : bound * 2;
  }
}

EtaleCertificate eta_etale_certificate(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f,
                                       const CertificateCaps& caps) {
  require_mixed(pres);
  for (int level = 0; level <= caps.n_max; ++level) {
    if (level == 0) {
      auto unramified = special_fiber_unramified(pres, f);
      if (unramified && !*unramified) continue;
    }
    if (auto cert = certify_at_level(pres, f, level, caps)) return *cert;
  }
  const long cap = caps.degree_cap ? *caps.degree_cap : default_degree_cap(pres, caps.n_max);
  fail(ErrorCode::kNotCertified,
       "no witness up to level " + std::to_string(caps.n_max) + " within degree cap " + std::to_string(cap));
}

CertificateCheck verify_certificate(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f,
                                    const EtaleCertificate& cert) {
  CertificateCheck out;
  if (!pres.model.is_mixed() || pres.model.p_u32() != cert.p) {
    out.reason = "model prime differs from the certificate";
    return out;
  }
  const std::size_t n = pres.nvars(), ngens = pres.ideal.gens.size();
  if (cert.level < 0 || cert.witnesses.size() != n) {
    out.reason = "one witness per variable expected";
    return out;
  }
  const BigInt bp(static_cast<unsigned long>(cert.p));
  BigInt q = 1, pn = 1;
  for (int i = 0; i <= cert.level; ++i) q *= bp;
  for (int i = 0; i < cert.level; ++i) pn *= bp;

  std::vector<const Poly<Rat>*> columns_src;
  for (const auto& g : pres.ideal.gens) columns_src.push_back(&g);
  for (const auto& g : f) columns_src.push_back(&g);

  auto admissible = [&](const Poly<Rat>& m) {
    if (m.nvars() != n) return false;
    if (!m.is_zero() && m.total_degree() > cert.degree_bound) return false;
    for (const auto& [mono, c] : m.terms())
      if (padic_valuation(c, bp).value < 0) return false;
    return true;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const EtaleWitness& w = cert.witnesses[i];
    if (w.target != i || w.column_multipliers.size() != columns_src.size() || w.ideal_multipliers.size() != ngens) {
      out.reason = "witness " + std::to_string(i) + " has the wrong shape";
      return out;
    }
    for (std::size_t comp = 0; comp < n; ++comp) {
      Poly<Rat> residual(n);
      for (std::size_t j = 0; j < columns_src.size(); ++j) {
        if (!admissible(w.column_multipliers[j])) {
          out.reason = "column multiplier out of range";
          return out;
        }
        residual += w.column_multipliers[j] * derivative(*columns_src[j], comp);
      }
      for (std::size_t g = 0; g < ngens; ++g) {
        if (w.ideal_multipliers[g].size() != n || !admissible(w.ideal_multipliers[g][comp])) {
          out.reason = "ideal multiplier out of range";
          return out;
        }
        residual += w.ideal_multipliers[g][comp] * pres.ideal.gens[g];
      }
      if (comp == i) residual -= Poly<Rat>::constant(n, Rat(pn));
      for (const auto& [mono, c] : residual.terms()) {
        // c must lie in q * Z_(p).
        if (c == 0) continue;
        Valuation v = padic_valuation(c, bp);
        if (v.value < cert.level + 1) {
          out.reason = "residual of witness " + std::to_string(i) + " is nonzero mod p^" +
                       std::to_string(cert.level + 1) + " in component " + std::to_string(comp);
          return out;
        }
      }
    }
  }
  out.ok = true;
  return out;
}

bool is_polynomial_in_coordinate_powers(const Poly<Rat>& y, std::int64_t power) {
  if (power <= 0) fail(ErrorCode::kInvalidArgument, "power must be positive");
  for (const auto& [m, c] : y.terms())
    for (Exponent e : m)
      if (e % power != 0) return false;
  return true;
}

bool perturbation_stability_check(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f_prime,
                                  const std::vector<Poly<Rat>>& y, int level, const CertificateCaps& caps) {
  require_mixed(pres);
  if (y.size() != f_prime.size()) fail(ErrorCode::kInvalidArgument, "perturbation length differs from the map");
  const auto power = static_cast<std::int64_t>(prime_power(pres.model.p_u32(), level + 1));
  const BigInt bp = pres.model.residue_characteristic();
  for (const auto& yi : y) {
    if (yi.nvars() != pres.nvars()) fail(ErrorCode::kInvalidArgument, "perturbation over a different ring");
    if (!is_polynomial_in_coordinate_powers(yi, power))
      fail(ErrorCode::kPreconditionError, "perturbation is not a polynomial in p^(n+1)-th powers of the coordinates");
    for (const auto& [m, c] : yi.terms())
      if (padic_valuation(c, bp).value < 0)
        fail(ErrorCode::kPreconditionError, "perturbation coefficient is not p-integral");
  }
  auto base = certify_at_level(pres, f_prime, level, caps);
  if (!base) return true;
  std::vector<Poly<Rat>> f = f_prime;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += y[i];
  auto perturbed = certify_at_level(pres, f, level, caps);
  return perturbed && verify_certificate(pres, f, *perturbed).ok;
}

}  // namespace logchart
