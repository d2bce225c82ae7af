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

#include "logchart/chart.hpp"

#include <algorithm>

#include "logchart/groebner.hpp"
#include "logchart/snf.hpp"

namespace logchart {

namespace {

Poly<Rat> monomial_of(const IVec& multiplicities) {
  Monomial m(multiplicities.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = multiplicities[i];
  return Poly<Rat>::term(m, Rat(1));
}

// Index of the variable f is, if f is exactly one variable with coefficient 1.
std::optional<std::size_t> as_variable(const Poly<Rat>& f) {
  if (f.terms().size() != 1) return std::nullopt;
  const auto& [m, c] = *f.terms().begin();
  if (!(c == Rat(1))) return std::nullopt;
  std::optional<std::size_t> var;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (m[i] != 1 || var) return std::nullopt;
    var = i;
  }
  return var;
}

std::string fresh_name(const VarSet& vars, std::size_t k) {
  for (std::size_t salt = 0;; ++salt) {
    std::string name = "w" + std::to_string(k + 1) + std::string(salt, '_');
    if (!vars.index_of(name)) return name;
  }
}

// Repeatedly picks, in generator order, the last free variable x_k that a
// generator c x_k + g contains only in that term with v_p(c) = 0, and
// substitutes x_k = -g / c everywhere. Solved generators become zero.
std::vector<SolvedCoordinate> solve_unit_linear_coordinates(std::vector<Poly<Rat>>& gens, std::vector<char> fixed,
                                                            const DvrModel& model) {
  std::vector<SolvedCoordinate> out;
  const BigInt& p = model.residue_characteristic();
  for (bool progress = true; progress;) {
    progress = false;
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      const std::size_t n = g.nvars();
      for (std::size_t k = n; k-- > 0;) {
        if (fixed[k]) continue;
        Monomial e(n, 0);
        e[k] = 1;
        const Rat* cp = g.coeff(e);
        if (cp == nullptr || padic_valuation(*cp, p) != Valuation::of(0)) continue;
        const Rat c = *cp;
        Poly<Rat> rest = g - Poly<Rat>::term(e, c);
        if (rest.degree_in(k) != 0) continue;
        Poly<Rat> value = rest.scaled(Rat(-1) / c);
        std::vector<Poly<Rat>> images;
        for (std::size_t i = 0; i < n; ++i) images.push_back(i == k ? value : Poly<Rat>::variable(n, i, Rat(1)));
        for (auto& h : gens) h = substitute(h, images, n);
        for (auto& s : out) s.value = substitute(s.value, images, n);
        out.push_back({k, value});
        fixed[k] = 1;
        progress = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace

ChartData::ChartData(AffineMonoid monoid, IVec rho, DvrModel model, const SearchCaps& caps)
    : monoid_(std::move(monoid)), rho_(std::move(rho)), model_(std::move(model)), caps_(caps) {
  if (rho_.size() != monoid_.rank()) fail(ErrorCode::kInvalidArgument, "rho has the wrong length");
  auto mem = membership(rho_, monoid_, caps_);
  if (mem.status == MembershipResult::Status::kCapExceeded)
    fail(ErrorCode::kCapExceeded, "membership of rho: " + mem.reason);
  if (!mem.member()) fail(ErrorCode::kPreconditionError, "rho is not in the monoid");
  rho_witness_ = mem.witness;
  dec_ = decompose_quotient(monoid_, rho_, caps_);
}

VarSet chart_variables(std::size_t generators) {
  if (generators == 1) return VarSet({"u"});
  if (generators == 2) return VarSet({"x", "y"});
  std::vector<std::string> names;
  for (std::size_t i = 0; i < generators; ++i) names.push_back("u" + std::to_string(i + 1));
  return VarSet(names);
}

QuotientPresentation<Rat> chart_ring(const ChartData& chart, const GbBudget& budget) {
  const std::size_t s = chart.monoid().size();
  QuotientPresentation<Rat> pres;
  pres.vars = chart_variables(s);
  pres.model = chart.model();
  auto gens = toric_ideal(integer_kernel(chart.monoid().matrix()), s, budget);
  if (!chart.model().is_mixed()) fail(ErrorCode::kPreconditionError, "chart rings are built over Z_(p) only");
  const Rat pi(chart.model().residue_characteristic());
  gens.push_back(monomial_of(chart.rho_witness()) - Poly<Rat>::constant(s, pi));
  pres.ideal = Ideal<Rat>(gens);
  return pres;
}

ChartMap build_h(const ChartData& chart) {
  ChartMap out;
  out.lift = lift_chi(chart.monoid(), chart.decomposition(), chart.caps());
  for (const auto& w : out.lift.witnesses) out.h.push_back(monomial_of(w));
  return out;
}

StructuralCheck check_h_structural(const ChartData& chart, const ChartMap& map) {
  const auto& dec = chart.decomposition();
  StructuralCheck out;
  out.torsion_invertible = torsion_invertibility_check(dec, chart.model());
  std::vector<std::vector<BigInt>> cols;
  for (const auto& img : map.lift.images) cols.push_back(dec.lattice_coordinates(img));
  cols.push_back(dec.lattice_coordinates(chart.rho()));
  const std::size_t d = map.lift.images.size();
  if (dec.lattice_rank() == d + 1) {
    auto snf = smith_normal_form(IntMatrix::from_columns(cols, dec.lattice_rank()));
    BigInt order(1);
    for (const auto& x : snf.invariants) order *= x;
    out.injective_with_torsion_cokernel = snf.rank == d + 1 && order == dec.torsion_order();
  }
  return out;
}

QuasiFiniteResult make_quasifinite(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f_prime,
                                   const QuasiFiniteCaps& caps, const std::optional<EtaleCertificate>& known) {
  if (!pres.model.is_mixed()) fail(ErrorCode::kPreconditionError, "quasi-finite maps need a mixed model");
  QuasiFiniteResult out;
  out.input_certificate = known ? *known : eta_etale_certificate(pres, f_prime, caps.certificate);
  const int level = out.input_certificate.level;

  auto [special, generic] = fiberwise_finite(pres, f_prime, caps.normalization.budget);
  if (special.finite && generic.finite) {
    out.f = f_prime;
    out.extended = pres;
    out.reduced = pres;
    out.f_reduced = f_prime;
    out.certificate = out.input_certificate;
    out.special = special;
    out.generic = generic;
    out.kept_input = true;
    return out;
  }

  // Distinguished coordinates: variables as they are, everything else via
  // a new w_k with relation w_k - f'_k.
  const std::size_t n = pres.nvars();
  std::vector<std::string> names = pres.vars.names();
  std::vector<std::size_t> adjoined, dist_ext;
  for (std::size_t k = 0; k < f_prime.size(); ++k) {
    auto v = as_variable(f_prime[k]);
    bool reused = v && std::find(dist_ext.begin(), dist_ext.end(), *v) != dist_ext.end();
    if (v && !reused) {
      dist_ext.push_back(*v);
    } else {
      dist_ext.push_back(names.size());
      names.push_back(fresh_name(VarSet(names), k));
      adjoined.push_back(k);
    }
  }
  const std::size_t ext_n = names.size();
  out.extended.vars = VarSet(names);
  out.extended.model = pres.model;
  out.extended.flat_asserted = pres.flat_asserted;
  std::vector<std::size_t> embed(n);
  for (std::size_t i = 0; i < n; ++i) embed[i] = i;
  std::vector<Poly<Rat>> gens;
  for (const auto& g : pres.ideal.gens) gens.push_back(remap_variables(g, embed, ext_n));
  for (std::size_t k : adjoined)
    gens.push_back(Poly<Rat>::variable(ext_n, dist_ext[k], Rat(1)) - remap_variables(f_prime[k], embed, ext_n));
  out.extended.ideal = Ideal<Rat>(gens);

  std::vector<char> fixed(ext_n, 0);
  for (std::size_t v : dist_ext) fixed[v] = 1;
  out.solved = solve_unit_linear_coordinates(gens, fixed, pres.model);
  std::vector<char> removed(ext_n, 0);
  for (const auto& s : out.solved) removed[s.var] = 1;
  std::vector<std::size_t> to_reduced(ext_n, 0);
  std::vector<std::string> reduced_names;
  for (std::size_t i = 0; i < ext_n; ++i) {
    if (removed[i]) continue;
    to_reduced[i] = out.reduced_to_extended.size();
    out.reduced_to_extended.push_back(i);
    reduced_names.push_back(names[i]);
  }
  const std::size_t red_n = reduced_names.size();
  out.reduced.vars = VarSet(reduced_names);
  out.reduced.model = pres.model;
  out.reduced.flat_asserted = pres.flat_asserted;
  std::vector<Poly<Rat>> red_gens;
  for (const auto& g : gens) {
    Poly<Rat> r = remap_variables(g, to_reduced, red_n);
    if (!r.is_zero()) red_gens.push_back(clear_denominators(r));
  }
  out.reduced.ideal = Ideal<Rat>(red_gens);
  for (std::size_t v : dist_ext) out.distinguished.push_back(to_reduced[v]);

  std::int64_t n_base = 1;
  for (int i = 0; i <= level; ++i) n_base = checked_mul(n_base, static_cast<Exponent>(out.input_certificate.p));
  auto norm = nagatatrick(out.reduced, out.distinguished, n_base, caps.normalization);
  out.f_reduced = norm.f;
  out.trace = norm.trace;

  std::vector<Poly<Rat>> back(n);
  for (std::size_t i = 0; i < n; ++i) back[i] = Poly<Rat>::variable(n, i, Rat(1));
  for (std::size_t k : adjoined) back.push_back(f_prime[k]);
  std::vector<Poly<Rat>> red_back;
  for (std::size_t i : out.reduced_to_extended) red_back.push_back(back[i]);
  for (const auto& g : norm.f) out.f.push_back(substitute(g, red_back, n));

  auto cert = certify_at_level(pres, out.f, level, caps.certificate);
  if (!cert) fail(ErrorCode::kNotCertified, "normalized map has no witness at level " + std::to_string(level));
  if (!verify_certificate(pres, out.f, *cert).ok)
    fail(ErrorCode::kNotCertified, "normalized map certificate does not verify");
  out.certificate = *cert;
  std::tie(out.special, out.generic) = fiberwise_finite(pres, out.f, caps.normalization.budget);
  if (!out.special.finite || !out.generic.finite)
    fail(ErrorCode::kRetryExhausted, "normalized map is not finite on both fibers of the input ring");
  return out;
}

PipelineResult kpi1_pipeline(const ChartData& chart, const QuasiFiniteCaps& caps) {
  PipelineResult out;
  out.presentation = chart_ring(chart, caps.normalization.budget);
  out.map = build_h(chart);
  out.structural = check_h_structural(chart, out.map);
  if (!out.structural.ok())
    fail(ErrorCode::kPreconditionError, out.structural.torsion_invertible
                                            ? "chi does not present the quotient up to torsion"
                                            : "torsion order is not invertible in the residue field");
  auto h_cert = eta_etale_certificate(out.presentation, out.map.h, caps.certificate);
  out.h_check = verify_certificate(out.presentation, out.map.h, h_cert);
  out.normalized = make_quasifinite(out.presentation, out.map.h, caps, h_cert);
  out.f_check = verify_certificate(out.presentation, out.normalized.f, out.normalized.certificate);
  if (out.normalized.kept_input) {
    out.power_form = true;
  } else {
    const auto& q = out.normalized;
    const std::size_t red_n = q.reduced.nvars();
    out.power_form = check_nth_power_form(*q.trace, q.f_reduced, red_n);
    for (std::size_t i = 0; i < q.f_reduced.size(); ++i) {
      Poly<Rat> y = q.f_reduced[i] - Poly<Rat>::variable(red_n, q.distinguished[i], Rat(1));
      out.power_form = out.power_form && is_polynomial_in_coordinate_powers(y, q.trace->n_base);
    }
  }
  return out;
}

}  // namespace logchart
