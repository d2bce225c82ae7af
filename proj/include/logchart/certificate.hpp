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

// Certificates that p^n kills the relative differentials of a map
// f : Spec R -> A^d over Z_(p), computed mod p^(n+1).
//
// For R = V[x]/I the module is (+) R dx_i modulo the Jacobian columns of I
// and f. A level-n witness for dx_i is a list of polynomial multipliers
//   sum_j c_j * col_j + sum_{g,k} m_{g,k} * g * e_k == p^n * e_i  (mod p^(n+1))
// with every multiplier of total degree <= the recorded bound.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logchart/kernels.hpp"
#include "logchart/poly.hpp"

namespace logchart {

struct CertificateCaps {
  int n_max = 6;
  // Multiplier degree bound at every level; unset means default_degree_cap.
  std::optional<long> degree_cap;
  // Upper bound on rows * columns of one linear system.
  std::size_t max_matrix_entries = 40'000'000;
};

struct EtaleWitness {
  std::size_t target = 0;  // index of dx_target
  // One per Jacobian column: ideal generators first, then map entries.
  std::vector<Poly<Rat>> column_multipliers;
  // [generator][component]
  std::vector<std::vector<Poly<Rat>>> ideal_multipliers;
};

struct EtaleCertificate {
  std::uint32_t p = 0;
  int level = 0;
  // Degree bound the witnesses were found at, and the configured cap.
  long degree_bound = 0;
  long degree_cap = 0;
  std::vector<EtaleWitness> witnesses;  // one per variable, in order
};

// 2 p^(n+1) + the largest total degree among the ideal generators (at least 1).
long default_degree_cap(const QuotientPresentation<Rat>& pres, int level);

/// Least level n <= caps.n_max with a witness. Level 0 is first tested
/// exactly through the unit-ideal criterion for the 0th Fitting ideal over
/// F_p; a failure there rules out witnesses of every degree.
///
/// Errors: PreconditionError (not MixedChar), NotCertified, BudgetExceeded.
EtaleCertificate eta_etale_certificate(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f,
                                       const CertificateCaps& caps = {});

// Witness search at one level; nullopt when none exists within the cap.
std::optional<EtaleCertificate> certify_at_level(const QuotientPresentation<Rat>& pres,
                                                 const std::vector<Poly<Rat>>& f, int level,
                                                 const CertificateCaps& caps = {});

// Exact over F_p: is the 0th Fitting ideal of the differentials the unit
// ideal? nullopt when the number of maximal minors exceeds an internal limit.
std::optional<bool> special_fiber_unramified(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f);

struct CertificateCheck {
  bool ok = false;
  std::string reason;
};

/// Re-expands every witness with exact rational polynomial arithmetic
/// against freshly computed derivatives, then reduces mod p^(n+1).
CertificateCheck verify_certificate(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f,
                                    const EtaleCertificate& cert);

// Every exponent vector is componentwise divisible by `power`.
bool is_polynomial_in_coordinate_powers(const Poly<Rat>& y, std::int64_t power);

/// True when certifying f' at level n implies certifying f' + y at level n
/// with a verifying witness; vacuously true when f' has no level-n witness.
///
/// Errors: PreconditionError when some y_i is not a p-integral polynomial in
/// p^(n+1)-th powers of the coordinates.
bool perturbation_stability_check(const QuotientPresentation<Rat>& pres, const std::vector<Poly<Rat>>& f_prime,
                                  const std::vector<Poly<Rat>>& y, int level, const CertificateCaps& caps = {});

}  // namespace logchart
