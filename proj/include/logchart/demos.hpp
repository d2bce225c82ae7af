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

// Two symbolic verifiers around the degeneration xy = pi.
//
// p1xp1: with pi = s^2, the map
//   ((a:b), (c:d)) -> s (2ac, 2bd, bc + ad) / delta,  delta = ad - bc,
// from P^1 x P^1 minus the diagonal onto xy = z^2 - pi, and its inverse on
// the charts z != s and z != -s, checked as exact identities.
//
// contraction: on V[x,y]/(xy - t), a map f whose generic fiber is etale
// must be constant on one component of the special fiber.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logchart/poly.hpp"

namespace logchart {

// Fraction of polynomials with a nonzero denominator; no gcd is taken.
struct PolyFraction {
  Poly<Rat> num, den;

  PolyFraction(Poly<Rat> n, Poly<Rat> d);
  friend PolyFraction operator+(const PolyFraction& a, const PolyFraction& b);
  friend PolyFraction operator-(const PolyFraction& a, const PolyFraction& b);
  friend PolyFraction operator*(const PolyFraction& a, const PolyFraction& b);
  bool is_zero() const { return num.is_zero(); }
};

struct PointPair {
  // Homogeneous coordinates (a:b), (c:d); neither point is (0:0).
  PolyFraction a, b, c, d;
};

struct IdentityResult {
  std::string name;
  std::string residual;  // "0" when the identity holds
  bool ok() const { return residual == "0"; }
};

struct P1xP1Report {
  std::vector<IdentityResult> identities;
  bool diagonal_excluded = false;  // a point with a = c, b = d raised DomainError
  bool ok() const;
};

/// Point of xy = z^2 - s^2 from a point pair at rational values with s.
/// DomainError on the diagonal.
std::vector<Rat> p1xp1_map_at(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& s);

/// All identities over Q(s)(a,b,c,d), plus the diagonal guard.
/// Errors: IdentityFailed if a residual is nonzero.
P1xP1Report demo_p1xp1();

struct ContractionTrial {
  Rat c;
  bool unit_ideal = false;
};

struct ContractionReport {
  std::vector<ContractionTrial> trials;
  bool probe_etale = false;  // every trial gave the unit ideal
  bool contracts_x_component = false;  // f mod (x, t) is constant
  bool contracts_y_component = false;  // f mod (y, t) is constant
  bool refutation() const { return probe_etale && !contracts_x_component && !contracts_y_component; }
};

/// For `trials` random nonzero c (fixed seed), tests whether
/// (xy - c, x f_x - y f_y) is the unit ideal of Q[x,y] at t = c, then checks
/// which special-fiber components f contracts. f is in (x, y) over Q(t).
///
/// Errors: PreconditionError when f has a pole at t = 0.
ContractionReport demo_prop72(const Poly<RatFunc>& f, int trials = 5, std::uint64_t seed = 72);

struct AdjugateCheck {
  Poly<Rat> det;
  bool det_matches = false;       // det [[f_x, y], [f_y, x]] == x f_x - y f_y
  bool adjugate_identity = false;  // M adj(M) == det I
};

AdjugateCheck matrix_identity_check(const Poly<Rat>& f);

}  // namespace logchart
