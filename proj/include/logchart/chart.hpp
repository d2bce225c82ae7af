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

// Chart rings V[P]/(p - rho) and the pipeline that turns chart data into a
// certified, fiberwise finite map to affine space.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logchart/certificate.hpp"
#include "logchart/monoid.hpp"
#include "logchart/normalize.hpp"

namespace logchart {

/// P, a non-unit rho in P and the base. Construction runs the membership
/// search for rho and the quotient decomposition.
///
/// Errors: PreconditionError (rho not a non-unit member), NotFree,
/// CapExceeded.
class ChartData {
 public:
  ChartData(AffineMonoid monoid, IVec rho, DvrModel model, const SearchCaps& caps = {});

  const AffineMonoid& monoid() const { return monoid_; }
  const IVec& rho() const { return rho_; }
  const DvrModel& model() const { return model_; }
  const IVec& rho_witness() const { return rho_witness_; }
  const MonoidDecomposition& decomposition() const { return dec_; }
  const SearchCaps& caps() const { return caps_; }

 private:
  AffineMonoid monoid_;
  IVec rho_;
  DvrModel model_;
  SearchCaps caps_;
  IVec rho_witness_;
  MonoidDecomposition dec_;
};

// One variable per generator: "u" for a single generator, "x", "y" for two,
// u1..us otherwise.
VarSet chart_variables(std::size_t generators);

/// Toric ideal of P plus (u^w - p), w the membership witness of rho.
QuotientPresentation<Rat> chart_ring(const ChartData& chart, const GbBudget& budget = {});

struct ChartMap {
  MonoidHomLift lift;
  std::vector<Poly<Rat>> h;  // h_i = u^(witness of chi(e_i))
};

ChartMap build_h(const ChartData& chart);

struct StructuralCheck {
  bool injective_with_torsion_cokernel = false;
  bool torsion_invertible = false;
  bool ok() const { return injective_with_torsion_cokernel && torsion_invertible; }
};

/// Z^(d+1) -> P^gp through (chi(e_1), ..., chi(e_d), rho) has full rank and
/// cokernel of order #T, and #T is a unit in the residue field.
StructuralCheck check_h_structural(const ChartData& chart, const ChartMap& map);

struct QuasiFiniteCaps {
  CertificateCaps certificate;
  NormalizationCaps normalization;
};

struct SolvedCoordinate {
  std::size_t var;  // index in the extended ring
  Poly<Rat> value;  // var = value in the ring; value does not involve var
};

struct QuasiFiniteResult {
  std::vector<Poly<Rat>> f;  // in the presentation's variables
  // Ring with w_k = f'_k adjoined for entries of f' that are not distinct
  // variables.
  QuotientPresentation<Rat> extended;
  // Coordinates x_k = g removed before normalizing, in removal order, and the
  // remaining ring with its variables' indices in the extended ring.
  std::vector<SolvedCoordinate> solved;
  QuotientPresentation<Rat> reduced;
  std::vector<std::size_t> reduced_to_extended;
  std::vector<std::size_t> distinguished;  // in the reduced ring
  std::vector<Poly<Rat>> f_reduced;
  std::optional<NormalizationTrace<Rat>> trace;  // empty when f' was kept
  EtaleCertificate input_certificate;
  EtaleCertificate certificate;
  FinitenessVerdict special, generic;
  bool kept_input = false;
};

/// f' certified at level n becomes f with f_i - f'_i a polynomial in
/// p^(n+1)-th powers, re-certified at level n and finite on both fibers.
/// When f' is already finite on both fibers it is returned unchanged.
/// Coordinates that some generator expresses as c x_k + g with c a p-adic
/// unit and g free of x_k are substituted away first (a V-isomorphism),
/// which keeps substitution exponents from compounding.
///
/// Errors: NotCertified, NoUnitContentGenerator, RetryExhausted,
/// BudgetExceeded, PreconditionError.
QuasiFiniteResult make_quasifinite(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f_prime,
                                   const QuasiFiniteCaps& caps = {},
                                   const std::optional<EtaleCertificate>& known = std::nullopt);

struct PipelineResult {
  QuotientPresentation<Rat> presentation;
  ChartMap map;
  StructuralCheck structural;
  QuasiFiniteResult normalized;
  CertificateCheck h_check, f_check;
  bool power_form = false;
  bool verified() const {
    return structural.ok() && h_check.ok && f_check.ok && power_form && normalized.special.finite &&
           normalized.generic.finite;
  }
};

/// chart_ring -> build_h -> structural check -> certify h -> make_quasifinite,
/// with every certificate re-verified independently.
///
/// Errors: PreconditionError (structural check fails or the model is not
/// mixed), plus everything the stages raise.
PipelineResult kpi1_pipeline(const ChartData& chart, const QuasiFiniteCaps& caps = {});

}  // namespace logchart
