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

// Fine monoids given by generators in Z^r, and the searches built on them.
// Every search is bounded by SearchCaps: a result is either exact or
// CapExceeded, never a guess.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logchart/coeff.hpp"
#include "logchart/snf.hpp"

namespace logchart {

using IVec = std::vector<std::int64_t>;

struct SearchCaps {
  std::int64_t multiplicity = 64;
  // Candidate multiplicity vectors examined per search.
  std::uint64_t work = 2'000'000;
};

/// Submonoid of Z^rank generated by a list; duplicates are removed keeping
/// the first occurrence.
class AffineMonoid {
 public:
  AffineMonoid(std::size_t rank, std::vector<IVec> generators);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<IVec>& generators() const { return gens_; }
  const IVec& generator(std::size_t i) const { return gens_.at(i); }
  // rank x size, generators as columns.
  IntMatrix matrix() const;
  IVec combine(const IVec& multiplicities) const;

 private:
  std::size_t rank_;
  std::vector<IVec> gens_;
};

struct MembershipResult {
  enum class Status { kMember, kNotMember, kCapExceeded };
  Status status = Status::kNotMember;
  IVec witness;  // multiplicities, one per generator
  std::string reason;
  bool member() const { return status == Status::kMember; }
};

/// Smallest witness first: lowest total multiplicity, then lexicographically
/// largest vector (earlier generators preferred).
MembershipResult membership(const IVec& v, const AffineMonoid& monoid, const SearchCaps& caps = {});

// Indices of generators g with -g in the monoid. They generate the unit group.
std::vector<std::size_t> unit_generators(const AffineMonoid& monoid, const SearchCaps& caps = {});

struct Face {
  std::vector<std::size_t> generator_indices;
};

Face face_generated_by(const AffineMonoid& monoid, const IVec& element, const SearchCaps& caps = {});
AffineMonoid localize(const AffineMonoid& monoid, const Face& face);
AffineMonoid localize_at_element(const AffineMonoid& monoid, const IVec& element);

struct SharpFreeResult {
  bool free = false;
  std::size_t sharp_rank = 0;
  // Irreducibles of the sharp quotient in Z^sharp_rank coordinates.
  std::vector<IVec> irreducibles;
  std::string reason;
};

SharpFreeResult is_sharp_free(const AffineMonoid& monoid, const SearchCaps& caps = {});

/// Class of an element of P[rho^-1]^gp in T + Z^a + Z^b.
struct ClassCoords {
  BigInt torsion;  // in [0, #T)
  std::vector<BigInt> free_part;
  std::vector<BigInt> sharp_part;
  friend bool operator==(const ClassCoords&, const ClassCoords&) = default;
};

/// P[rho^-1] / rho = T + Z^a + N^b together with the coordinate map and a
/// section of it.
class MonoidDecomposition {
 public:
  const BigInt& torsion_order() const { return torsion_order_; }
  // Invariant factors (> 1) of T.
  std::vector<BigInt> torsion_invariants() const;
  std::size_t free_rank() const { return a_; }
  std::size_t sharp_rank() const { return b_; }
  std::size_t dimension() const { return a_ + b_; }
  const std::vector<IVec>& sharp_irreducibles() const { return irreducibles_; }

  // x must lie in the group generated by the monoid.
  ClassCoords classify(const IVec& x) const;
  // Some y in the group with classify(y) == c.
  IVec section(const ClassCoords& c) const;
  // chi_0(e_i): the i-th basis vector of Z^a, then of N^b.
  ClassCoords chi0(std::size_t i) const;
  ClassCoords add(const ClassCoords& x, const ClassCoords& y, const BigInt& times = 1) const;
  ClassCoords zero() const;

  const std::vector<ClassCoords>& generator_classes() const { return generator_classes_; }
  // Coordinates of x in a Z-basis of the group generated by the monoid.
  std::vector<BigInt> lattice_coordinates(const IVec& x) const;
  std::size_t lattice_rank() const { return lattice_rank_; }

 private:
  friend MonoidDecomposition decompose_quotient(const AffineMonoid&, const IVec&, const SearchCaps&);

  std::size_t rank_r_ = 0, lattice_rank_ = 0, unit_rank_ = 0, a_ = 0, b_ = 0;
  BigInt torsion_order_{1};
  IntMatrix lattice_u_, lattice_u_inv_;  // SNF transforms of the generator matrix
  std::vector<BigInt> lattice_d_;
  IntMatrix unit_u_, unit_u_inv_;        // SNF transforms of the unit lattice
  IntMatrix basis_, basis_inv_;          // [rho', b_1..b_a] in unit coordinates
  IntMatrix sharp_, sharp_inv_;          // irreducibles as columns
  std::vector<IVec> irreducibles_;
  std::vector<ClassCoords> generator_classes_;
};

/// Errors: PreconditionError when rho is not a non-unit of P, NotFree,
/// CapExceeded.
MonoidDecomposition decompose_quotient(const AffineMonoid& monoid, const IVec& rho, const SearchCaps& caps = {});

struct MonoidHomLift {
  std::vector<IVec> images;     // chi(e_i) in Z^r
  std::vector<IVec> witnesses;  // multiplicities over the generators of P
};

MonoidHomLift lift_chi(const AffineMonoid& monoid, const MonoidDecomposition& dec, const SearchCaps& caps = {});

bool torsion_invertibility_check(const MonoidDecomposition& dec, const DvrModel& model);

}  // namespace logchart
