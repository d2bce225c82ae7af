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

#include "logchart/monoid.hpp"

#include <algorithm>
#include <optional>

#include "logchart/lp.hpp"
#include "logchart/poly.hpp"

namespace logchart {
namespace {

std::vector<BigInt> to_big(const IVec& v) {
  std::vector<BigInt> r;
  r.reserve(v.size());
  for (std::int64_t x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

std::int64_t to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) fail(ErrorCode::kExponentOverflow, "lattice coordinate does not fit int64");
  return v.get_si();
}

IVec to_ivec(const std::vector<BigInt>& v) {
  IVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(to_i64(x));
  return r;
}

IVec negate(IVec v) {
  for (auto& x : v) x = -x;
  return v;
}

bool is_zero_vec(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

IVec sub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

enum class EnumEnd { kStopped, kExhausted, kWorkExceeded };

// Multiplicity vectors with c_i <= upper[i] and total <= max_total, in
// canonical order: total ascending, then lexicographically descending.
template <class Visit>
EnumEnd enumerate_multiplicities(const IVec& upper, std::int64_t max_total, std::uint64_t work, Visit&& visit) {
  const std::size_t s = upper.size();
  if (s == 0) return visit(IVec{}) ? EnumEnd::kStopped : EnumEnd::kExhausted;
  IVec suffix(s + 1, 0);
  for (std::size_t i = s; i-- > 0;) suffix[i] = suffix[i + 1] + upper[i];
  max_total = std::min(max_total, suffix[0]);
  IVec c(s, 0);
  std::uint64_t visited = 0;
  bool stop = false, exhausted_work = false;
  auto rec = [&](auto&& self, std::size_t i, std::int64_t remaining) -> void {
    if (stop || exhausted_work) return;
    if (i + 1 == s) {
      if (remaining > upper[i]) return;
      c[i] = remaining;
      if (++visited > work) {
        exhausted_work = true;
        return;
      }
      if (visit(c)) stop = true;
      return;
    }
    for (std::int64_t v = std::min(remaining, upper[i]); v >= 0; --v) {
      if (remaining - v > suffix[i + 1]) break;
      c[i] = v;
      self(self, i + 1, remaining - v);
      if (stop || exhausted_work) return;
    }
    c[i] = 0;
  };
  for (std::int64_t total = 0; total <= max_total; ++total) {
    rec(rec, 0, total);
    if (stop) return EnumEnd::kStopped;
    if (exhausted_work) return EnumEnd::kWorkExceeded;
  }
  return EnumEnd::kExhausted;
}

std::vector<std::vector<Rat>> lp_matrix(const AffineMonoid& m) {
  std::vector<std::vector<Rat>> a(m.rank(), std::vector<Rat>(m.size()));
  for (std::size_t j = 0; j < m.size(); ++j)
    for (std::size_t i = 0; i < m.rank(); ++i) a[i][j] = Rat(static_cast<long>(m.generator(j)[i]));
  return a;
}

std::vector<Rat> lp_rhs(const IVec& v) {
  std::vector<Rat> b;
  for (std::int64_t x : v) b.emplace_back(static_cast<long>(x));
  return b;
}

BigInt floor_of(const Rat& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Coordinates of x in the Z-basis {d_i * U^-1 e_i} of the column lattice of
// the SNF input; nullopt when x is outside the lattice.
std::optional<std::vector<BigInt>> lattice_coords(const SnfResult& snf, const std::vector<BigInt>& x) {
  std::vector<BigInt> w = snf.u.apply(x);
  std::vector<BigInt> out(snf.rank);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < snf.rank) {
      if (!mpz_divisible_p(w[i].get_mpz_t(), snf.invariants[i].get_mpz_t())) return std::nullopt;
      mpz_divexact(out[i].get_mpz_t(), w[i].get_mpz_t(), snf.invariants[i].get_mpz_t());
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return out;
}

// Data shared by is_sharp_free and decompose_quotient.
struct SharpAnalysis {
  SnfResult lattice;
  std::vector<std::size_t> units;
  SnfResult unit_snf;
  std::size_t unit_rank = 0;
  bool unit_lattice_saturated = true;
  std::vector<std::vector<BigInt>> split;  // per generator: unit coords, then sharp coords
  std::vector<IVec> sharp_generators;      // distinct nonzero sharp images, in generator order
  std::vector<IVec> irreducibles;
  std::size_t sharp_rank = 0;
  bool free = false;
  std::string reason;
};

SharpAnalysis analyze_sharp(const AffineMonoid& m, const SearchCaps& caps) {
  SharpAnalysis s;
  s.lattice = smith_normal_form(m.matrix());
  const std::size_t big_r = s.lattice.rank;
  s.units = unit_generators(m, caps);
  std::vector<std::vector<BigInt>> unit_cols;
  for (std::size_t i : s.units) unit_cols.push_back(*lattice_coords(s.lattice, to_big(m.generator(i))));
  s.unit_snf = smith_normal_form(IntMatrix::from_columns(unit_cols, big_r));
  s.unit_rank = s.unit_snf.rank;
  s.sharp_rank = big_r - s.unit_rank;
  for (const auto& d : s.unit_snf.invariants)
    if (d != 1) s.unit_lattice_saturated = false;
  if (!s.unit_lattice_saturated) {
    s.reason = "the group of units is not saturated in the group of the monoid, so the sharp quotient has torsion";
    return s;
  }
  for (std::size_t g = 0; g < m.size(); ++g)
    s.split.push_back(s.unit_snf.u.apply(*lattice_coords(s.lattice, to_big(m.generator(g)))));
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (std::find(s.units.begin(), s.units.end(), g) != s.units.end()) continue;
    IVec h;
    for (std::size_t i = s.unit_rank; i < big_r; ++i) h.push_back(to_i64(s.split[g][i]));
    if (is_zero_vec(h)) continue;
    if (std::find(s.sharp_generators.begin(), s.sharp_generators.end(), h) == s.sharp_generators.end())
      s.sharp_generators.push_back(h);
  }
  AffineMonoid sharp(s.sharp_rank, s.sharp_generators);
  for (std::size_t j = 0; j < s.sharp_generators.size(); ++j) {
    bool reducible = false;
    for (std::size_t l = 0; l < s.sharp_generators.size() && !reducible; ++l) {
      if (l == j) continue;
      auto r = membership(sub(s.sharp_generators[j], s.sharp_generators[l]), sharp, caps);
      if (r.status == MembershipResult::Status::kCapExceeded)
        fail(ErrorCode::kCapExceeded, "irreducibility test undecided: " + r.reason);
      reducible = r.member();
    }
    if (!reducible) s.irreducibles.push_back(s.sharp_generators[j]);
  }
  if (s.irreducibles.size() != s.sharp_rank) {
    s.reason = std::to_string(s.irreducibles.size()) + " irreducibles in rank " + std::to_string(s.sharp_rank);
    return s;
  }
  std::vector<std::vector<BigInt>> cols;
  for (const auto& e : s.irreducibles) cols.push_back(to_big(e));
  IntMatrix e = IntMatrix::from_columns(cols, s.sharp_rank);
  BigInt det = e.determinant();
  if (det != 1 && det != -1) {
    s.reason = "irreducibles are independent but span a sublattice of index " + BigInt(abs(det)).get_str();
    return s;
  }
  IntMatrix e_inv = unimodular_inverse(e);
  for (const auto& h : s.sharp_generators)
    for (const auto& c : e_inv.apply(to_big(h)))
      if (c < 0) {
        s.reason = "a generator is not a non-negative combination of the irreducibles";
        return s;
      }
  s.free = true;
  return s;
}

}  // namespace

AffineMonoid::AffineMonoid(std::size_t rank, std::vector<IVec> generators) : rank_(rank) {
  for (auto& g : generators) {
    if (g.size() != rank) fail(ErrorCode::kInvalidArgument, "generator length does not match the rank");
    if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
  }
}

IntMatrix AffineMonoid::matrix() const {
  std::vector<std::vector<BigInt>> cols;
  for (const auto& g : gens_) cols.push_back(to_big(g));
  return IntMatrix::from_columns(cols, rank_);
}

IVec AffineMonoid::combine(const IVec& multiplicities) const {
  if (multiplicities.size() != gens_.size()) fail(ErrorCode::kInvalidArgument, "one multiplicity per generator");
  IVec r(rank_, 0);
  for (std::size_t j = 0; j < gens_.size(); ++j)
    for (std::size_t i = 0; i < rank_; ++i) r[i] = checked_add(r[i], checked_mul(multiplicities[j], gens_[j][i]));
  return r;
}

MembershipResult membership(const IVec& v, const AffineMonoid& monoid, const SearchCaps& caps) {
  if (v.size() != monoid.rank()) fail(ErrorCode::kInvalidArgument, "vector length does not match the rank");
  if (caps.multiplicity <= 0) fail(ErrorCode::kInvalidArgument, "membership cap must be positive");
  MembershipResult res;
  const std::size_t s = monoid.size();
  if (is_zero_vec(v)) {
    res.status = MembershipResult::Status::kMember;
    res.witness.assign(s, 0);
    return res;
  }
  if (s == 0) {
    res.reason = "the monoid is trivial";
    return res;
  }
  if (!lattice_coords(smith_normal_form(monoid.matrix()), to_big(v))) {
    res.reason = "not in the group generated by the monoid";
    return res;
  }
  auto a = lp_matrix(monoid);
  auto b = lp_rhs(v);
  if (!lp_feasible(a, b)) {
    res.reason = "not in the rational cone";
    return res;
  }
  bool exact = true;
  IVec upper(s);
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<Rat> c(s);
    c[i] = 1;
    LpResult lp = solve_lp(a, b, c);
    BigInt top = lp.status == LpResult::Status::kOptimal ? floor_of(lp.value) : BigInt(caps.multiplicity + 1);
    if (top > caps.multiplicity) {
      exact = false;
      upper[i] = caps.multiplicity;
    } else {
      upper[i] = top.get_si();
    }
  }
  std::int64_t max_total = 0;
  for (auto u : upper) max_total += u;
  {
    LpResult lp = solve_lp(a, b, std::vector<Rat>(s, Rat(1)));
    if (lp.status == LpResult::Status::kOptimal) max_total = std::min<std::int64_t>(max_total, floor_of(lp.value).get_si());
  }
  IVec acc(monoid.rank());
  auto end = enumerate_multiplicities(upper, max_total, caps.work, [&](const IVec& c) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t j = 0; j < s; ++j) {
      if (c[j] == 0) continue;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c[j] * monoid.generator(j)[i];
    }
    if (acc != v) return false;
    res.witness = c;
    return true;
  });
  if (end == EnumEnd::kStopped) {
    res.status = MembershipResult::Status::kMember;
  } else if (end == EnumEnd::kExhausted && exact) {
    res.reason = "no multiplicity vector in the bounded feasible region";
  } else {
    res.status = MembershipResult::Status::kCapExceeded;
    res.reason = end == EnumEnd::kWorkExceeded ? "search work budget exhausted"
                                               : "multiplicities beyond the cap " + std::to_string(caps.multiplicity);
  }
  return res;
}

std::vector<std::size_t> unit_generators(const AffineMonoid& monoid, const SearchCaps& caps) {
  std::vector<std::size_t> units;
  for (std::size_t i = 0; i < monoid.size(); ++i) {
    auto r = membership(negate(monoid.generator(i)), monoid, caps);
    if (r.status == MembershipResult::Status::kCapExceeded)
      fail(ErrorCode::kCapExceeded, "unit test undecided for generator " + std::to_string(i) + ": " + r.reason);
    if (r.member()) units.push_back(i);
  }
  return units;
}

Face face_generated_by(const AffineMonoid& monoid, const IVec& element, const SearchCaps& caps) {
  auto own = membership(element, monoid, caps);
  if (own.status == MembershipResult::Status::kCapExceeded)
    fail(ErrorCode::kCapExceeded, "membership of the face generator undecided");
  if (!own.member()) fail(ErrorCode::kPreconditionError, "face generator is not in the monoid");
  Face face;
  const std::size_t s = monoid.size();
  for (std::size_t g = 0; g < s; ++g) {
    // Rational pre-check: lambda * a - g in the real cone for some lambda >= 0.
    std::vector<std::vector<Rat>> a(monoid.rank(), std::vector<Rat>(s + 1));
    for (std::size_t i = 0; i < monoid.rank(); ++i) {
      a[i][0] = Rat(static_cast<long>(element[i]));
      for (std::size_t j = 0; j < s; ++j) a[i][j + 1] = Rat(static_cast<long>(-monoid.generator(j)[i]));
    }
    if (!lp_feasible(a, lp_rhs(monoid.generator(g)))) continue;
    bool found = false, undecided = false;
    const std::int64_t top = is_zero_vec(element) ? 1 : caps.multiplicity;
    for (std::int64_t n = 1; n <= top && !found; ++n) {
      IVec target(monoid.rank());
      for (std::size_t i = 0; i < target.size(); ++i)
        target[i] = checked_mul(n, element[i]) - monoid.generator(g)[i];
      auto r = membership(target, monoid, caps);
      if (r.status == MembershipResult::Status::kCapExceeded) undecided = true;
      found = r.member();
    }
    if (found) {
      face.generator_indices.push_back(g);
    } else if (undecided || !is_zero_vec(element)) {
      fail(ErrorCode::kCapExceeded,
           "face membership of generator " + std::to_string(g) + " undecided up to n = " + std::to_string(top));
    }
  }
  return face;
}

AffineMonoid localize(const AffineMonoid& monoid, const Face& face) {
  std::vector<IVec> gens = monoid.generators();
  for (std::size_t i : face.generator_indices) gens.push_back(negate(monoid.generator(i)));
  return AffineMonoid(monoid.rank(), std::move(gens));
}

AffineMonoid localize_at_element(const AffineMonoid& monoid, const IVec& element) {
  std::vector<IVec> gens = monoid.generators();
  gens.push_back(negate(element));
  return AffineMonoid(monoid.rank(), std::move(gens));
}

SharpFreeResult is_sharp_free(const AffineMonoid& monoid, const SearchCaps& caps) {
  SharpAnalysis s = analyze_sharp(monoid, caps);
  SharpFreeResult r;
  r.free = s.free;
  r.sharp_rank = s.sharp_rank;
  r.irreducibles = s.irreducibles;
  r.reason = s.reason;
  return r;
}

std::vector<BigInt> MonoidDecomposition::torsion_invariants() const {
  if (torsion_order_ == 1) return {};
  return {torsion_order_};
}

std::vector<BigInt> MonoidDecomposition::lattice_coordinates(const IVec& x) const {
  SnfResult view;
  view.u = lattice_u_;
  view.rank = lattice_rank_;
  view.invariants = lattice_d_;
  auto c = lattice_coords(view, to_big(x));
  if (!c) fail(ErrorCode::kInvalidArgument, "vector is not in the group generated by the monoid");
  return *c;
}

ClassCoords MonoidDecomposition::classify(const IVec& x) const {
  std::vector<BigInt> y = unit_u_.apply(lattice_coordinates(x));
  std::vector<BigInt> top(y.begin(), y.begin() + static_cast<long>(unit_rank_));
  std::vector<BigInt> bottom(y.begin() + static_cast<long>(unit_rank_), y.end());
  std::vector<BigInt> z = basis_inv_.apply(top);
  ClassCoords c;
  mpz_fdiv_r(c.torsion.get_mpz_t(), z[0].get_mpz_t(), torsion_order_.get_mpz_t());
  c.free_part.assign(z.begin() + 1, z.end());
  c.sharp_part = b_ ? sharp_inv_.apply(bottom) : std::vector<BigInt>{};
  return c;
}

IVec MonoidDecomposition::section(const ClassCoords& c) const {
  if (c.free_part.size() != a_ || c.sharp_part.size() != b_)
    fail(ErrorCode::kInvalidArgument, "class coordinates have the wrong shape");
  std::vector<BigInt> z{c.torsion};
  z.insert(z.end(), c.free_part.begin(), c.free_part.end());
  std::vector<BigInt> y = basis_.apply(z);
  if (b_) {
    auto bottom = sharp_.apply(c.sharp_part);
    y.insert(y.end(), bottom.begin(), bottom.end());
  }
  std::vector<BigInt> coords = unit_u_inv_.apply(y);
  std::vector<BigInt> w(rank_r_);
  for (std::size_t i = 0; i < lattice_rank_; ++i) w[i] = lattice_d_[i] * coords[i];
  return to_ivec(lattice_u_inv_.apply(w));
}

ClassCoords MonoidDecomposition::zero() const {
  ClassCoords c;
  c.torsion = 0;
  c.free_part.assign(a_, BigInt(0));
  c.sharp_part.assign(b_, BigInt(0));
  return c;
}

ClassCoords MonoidDecomposition::chi0(std::size_t i) const {
  if (i >= a_ + b_) fail(ErrorCode::kInvalidArgument, "basis index out of range");
  ClassCoords c = zero();
  if (i < a_) {
    c.free_part[i] = 1;
  } else {
    c.sharp_part[i - a_] = 1;
  }
  return c;
}

ClassCoords MonoidDecomposition::add(const ClassCoords& x, const ClassCoords& y, const BigInt& times) const {
  ClassCoords r = x;
  r.torsion += times * y.torsion;
  mpz_fdiv_r(r.torsion.get_mpz_t(), r.torsion.get_mpz_t(), torsion_order_.get_mpz_t());
  for (std::size_t i = 0; i < a_; ++i) r.free_part[i] += times * y.free_part[i];
  for (std::size_t i = 0; i < b_; ++i) r.sharp_part[i] += times * y.sharp_part[i];
  return r;
}

MonoidDecomposition decompose_quotient(const AffineMonoid& monoid, const IVec& rho, const SearchCaps& caps) {
  if (rho.size() != monoid.rank()) fail(ErrorCode::kInvalidArgument, "rho length does not match the rank");
  auto in_p = membership(rho, monoid, caps);
  if (in_p.status == MembershipResult::Status::kCapExceeded)
    fail(ErrorCode::kCapExceeded, "membership of rho undecided: " + in_p.reason);
  if (!in_p.member()) fail(ErrorCode::kPreconditionError, "rho is not in the monoid");
  auto inv = membership(negate(rho), monoid, caps);
  if (inv.status == MembershipResult::Status::kCapExceeded)
    fail(ErrorCode::kCapExceeded, "invertibility of rho undecided: " + inv.reason);
  if (inv.member()) fail(ErrorCode::kPreconditionError, "rho is invertible in the monoid");

  AffineMonoid loc = localize_at_element(monoid, rho);
  SharpAnalysis s = analyze_sharp(loc, caps);
  if (!s.free) fail(ErrorCode::kNotFree, "sharp quotient of P[rho^-1] is not free: " + s.reason);

  MonoidDecomposition dec;
  dec.rank_r_ = monoid.rank();
  dec.lattice_rank_ = s.lattice.rank;
  dec.unit_rank_ = s.unit_rank;
  dec.lattice_u_ = s.lattice.u;
  dec.lattice_u_inv_ = s.lattice.u_inv;
  dec.lattice_d_ = s.lattice.invariants;
  dec.unit_u_ = s.unit_snf.u;
  dec.unit_u_inv_ = s.unit_snf.u_inv;
  const std::size_t k = s.unit_rank;
  dec.a_ = k - 1;
  dec.b_ = s.sharp_rank;

  std::vector<BigInt> y_rho = dec.unit_u_.apply(*lattice_coords(s.lattice, to_big(rho)));
  std::vector<BigInt> r(y_rho.begin(), y_rho.begin() + static_cast<long>(k));
  BigInt c(0);
  for (const auto& v : r) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), v.get_mpz_t());
  dec.torsion_order_ = c;
  std::vector<BigInt> primitive(k);
  for (std::size_t i = 0; i < k; ++i) mpz_divexact(primitive[i].get_mpz_t(), r[i].get_mpz_t(), c.get_mpz_t());

  // Complete rho' to a basis, preferring unit generators in order.
  std::vector<std::vector<BigInt>> cols{primitive};
  auto saturated = [&](const std::vector<std::vector<BigInt>>& cs) {
    SnfResult t = smith_normal_form(IntMatrix::from_columns(cs, k));
    return t.rank == cs.size() && std::all_of(t.invariants.begin(), t.invariants.end(),
                                              [](const BigInt& d) { return d == 1; });
  };
  for (std::size_t u : s.units) {
    if (cols.size() == k) break;
    std::vector<BigInt> cand(s.split[u].begin(), s.split[u].begin() + static_cast<long>(k));
    auto trial = cols;
    trial.push_back(cand);
    if (saturated(trial)) cols = std::move(trial);
  }
  if (cols.size() < k) {
    SnfResult t = smith_normal_form(IntMatrix::from_columns({primitive}, k));
    cols.resize(1);
    for (std::size_t j = 1; j < k; ++j) cols.push_back(t.u_inv.column(j));
  }
  dec.basis_ = IntMatrix::from_columns(cols, k);
  dec.basis_inv_ = unimodular_inverse(dec.basis_);

  dec.irreducibles_ = s.irreducibles;
  std::vector<std::vector<BigInt>> ecols;
  for (const auto& e : s.irreducibles) ecols.push_back(to_big(e));
  dec.sharp_ = IntMatrix::from_columns(ecols, dec.b_);
  dec.sharp_inv_ = unimodular_inverse(dec.sharp_);

  for (const auto& g : monoid.generators()) dec.generator_classes_.push_back(dec.classify(g));
  return dec;
}

MonoidHomLift lift_chi(const AffineMonoid& monoid, const MonoidDecomposition& dec, const SearchCaps& caps) {
  MonoidHomLift lift;
  const std::size_t s = monoid.size();
  const auto& classes = dec.generator_classes();
  for (std::size_t i = 0; i < dec.dimension(); ++i) {
    ClassCoords target = dec.chi0(i);
    IVec found;
    auto end = enumerate_multiplicities(IVec(s, caps.multiplicity), caps.multiplicity, caps.work, [&](const IVec& c) {
      ClassCoords acc = dec.zero();
      for (std::size_t j = 0; j < s; ++j)
        if (c[j] != 0) acc = dec.add(acc, classes[j], BigInt(static_cast<long>(c[j])));
      if (!(acc == target)) return false;
      found = c;
      return true;
    });
    if (end != EnumEnd::kStopped)
      fail(ErrorCode::kCapExceeded, "no lift of basis vector " + std::to_string(i) + " within the search cap");
    lift.witnesses.push_back(found);
    lift.images.push_back(monoid.combine(found));
  }
  return lift;
}

bool torsion_invertibility_check(const MonoidDecomposition& dec, const DvrModel& model) {
  if (!model.is_mixed()) return true;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), dec.torsion_order().get_mpz_t(), model.residue_characteristic().get_mpz_t());
  return g == 1;
}

}  // namespace logchart
