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

#include <numeric>

#include "doctest.h"
#include "logchart/monoid.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace logchart;
using namespace logchart::testing;
using logchart::testing::code_of;
using Status = MembershipResult::Status;

namespace {

AffineMonoid free_monoid(std::size_t r) {
  std::vector<IVec> g;
  for (std::size_t i = 0; i < r; ++i) {
    IVec e(r, 0);
    e[i] = 1;
    g.push_back(e);
  }
  return AffineMonoid(r, g);
}

const AffineMonoid kA1(2, {{2, 0}, {1, 1}, {0, 2}});

}  // namespace

TEST_CASE("membership") {
  auto n2 = free_monoid(2);
  auto r = membership({2, 1}, n2);
  REQUIRE(r.member());
  CHECK(r.witness == IVec{2, 1});
  auto g = membership({1, 1}, kA1);
  REQUIRE(g.member());
  CHECK(g.witness == IVec{0, 1, 0});
  auto parity = membership({1, 0}, AffineMonoid(2, {{2, 0}, {0, 2}}));
  CHECK(parity.status == Status::kNotMember);
  CHECK(membership({-1, 0}, n2).status == Status::kNotMember);
  CHECK(membership({0, 0}, n2).witness == IVec{0, 0});
  // A non-saturated monoid: (1) is in the cone and the lattice of <2,3>.
  CHECK(membership({1}, AffineMonoid(1, {{2}, {3}})).status == Status::kNotMember);
  CHECK(membership({5}, AffineMonoid(1, {{2}, {3}})).witness == IVec{1, 1});
  CHECK(code_of([&] { membership({1}, n2); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("membership witnesses re-evaluate") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
    std::size_t s = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
    std::vector<IVec> gens;
    for (std::size_t j = 0; j < s; ++j) {
      IVec g(r);
      for (auto& x : g) x = testing::uniform(rng, 0, 3);
      gens.push_back(g);
    }
    AffineMonoid p(r, gens);
    IVec v(r);
    for (auto& x : v) x = testing::uniform(rng, 0, 6);
    auto res = membership(v, p);
    CHECK(res.status != Status::kCapExceeded);
    if (res.member()) CHECK(p.combine(res.witness) == v);
  }
}

TEST_CASE("cap exhaustion is reported") {
  // The x-axis is a unit direction, so multiplicities are unbounded and the
  // non-member (0,1) cannot be ruled out by a finite search.
  AffineMonoid p(2, {{1, 0}, {-1, 0}, {0, 2}, {1, 3}});
  SearchCaps caps;
  caps.multiplicity = 3;
  auto r = membership({0, 1}, p, caps);
  CHECK(r.status == Status::kCapExceeded);
}

TEST_CASE("units") {
  CHECK(unit_generators(free_monoid(2)).empty());
  CHECK(unit_generators(AffineMonoid(2, {{1, 0}, {0, 1}, {-1, -1}})).size() == 3);
  CHECK(unit_generators(AffineMonoid(2, {{1, 0}, {-1, 0}, {0, 1}})) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("faces") {
  auto n2 = free_monoid(2);
  CHECK(face_generated_by(n2, {1, 0}).generator_indices == std::vector<std::size_t>{0});
  CHECK(face_generated_by(n2, {1, 1}).generator_indices == std::vector<std::size_t>{0, 1});
  CHECK(face_generated_by(n2, {0, 0}).generator_indices.empty());
  CHECK(code_of([&] { face_generated_by(n2, {-1, 0}); }) == ErrorCode::kPreconditionError);
  // Face of the A1 cone through the ray (2,0).
  CHECK(face_generated_by(kA1, {2, 0}).generator_indices == std::vector<std::size_t>{0});
  CHECK(face_generated_by(kA1, {1, 1}).generator_indices == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("detected faces are closed under the face property") {
  std::vector<AffineMonoid> corpus{free_monoid(3), kA1, AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}}),
                                   AffineMonoid(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {0, 0, 1}})};
  for (const auto& p : corpus) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i; j < p.size(); ++j) {
        IVec a(p.rank());
        for (std::size_t k = 0; k < a.size(); ++k) a[k] = p.generator(i)[k] + p.generator(j)[k];
        auto face = face_generated_by(p, a).generator_indices;
        auto has = [&](std::size_t g) { return std::find(face.begin(), face.end(), g) != face.end(); };
        CHECK(has(i));
        CHECK(has(j));
        // Whenever g + h is detected as a face element, so are g and h.
        for (std::size_t g = 0; g < p.size(); ++g)
          for (std::size_t h = 0; h < p.size(); ++h) {
            IVec sum(p.rank());
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = p.generator(g)[k] + p.generator(h)[k];
            auto sub = face_generated_by(p, sum).generator_indices;
            bool inside = std::all_of(sub.begin(), sub.end(), has);
            if (inside) {
              CHECK(has(g));
              CHECK(has(h));
            }
          }
      }
    }
  }
}

TEST_CASE("localization") {
  auto n2 = free_monoid(2);
  auto l = localize_at_element(n2, {1, 1});
  CHECK(l.generators() == std::vector<IVec>{{1, 0}, {0, 1}, {-1, -1}});
  CHECK(unit_generators(l).size() == 3);
  CHECK(localize(n2, Face{}).generators() == n2.generators());
  auto l3 = localize(free_monoid(3), face_generated_by(free_monoid(3), {1, 1, 0}));
  CHECK(unit_generators(l3) == std::vector<std::size_t>{0, 1, 3, 4});
}

TEST_CASE("sharp freeness") {
  auto f = is_sharp_free(free_monoid(3));
  CHECK(f.free);
  CHECK(f.irreducibles.size() == 3);
  auto a1 = is_sharp_free(kA1);
  CHECK_FALSE(a1.free);
  CHECK(a1.irreducibles.size() == 3);
  CHECK(a1.sharp_rank == 2);
  auto z2 = is_sharp_free(AffineMonoid(2, {{1, 0}, {0, 1}, {-1, -1}}));
  CHECK(z2.free);
  CHECK(z2.irreducibles.empty());
}

TEST_CASE("decomposition examples") {
  auto d1 = decompose_quotient(free_monoid(2), {1, 1});
  CHECK(d1.torsion_order() == 1);
  CHECK(d1.free_rank() == 1);
  CHECK(d1.sharp_rank() == 0);
  CHECK(d1.dimension() == 1);
  auto d2 = decompose_quotient(free_monoid(3), {1, 1, 0});
  CHECK(d2.torsion_order() == 1);
  CHECK(d2.free_rank() == 1);
  CHECK(d2.sharp_rank() == 1);
  auto d3 = decompose_quotient(free_monoid(3), {1, 1, 1});
  CHECK(d3.free_rank() == 2);
  CHECK(d3.sharp_rank() == 0);
  AffineMonoid n_plus_a1(3, {{1, 0, 0}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}});
  CHECK(code_of([&] { decompose_quotient(n_plus_a1, {1, 0, 0}); }) == ErrorCode::kNotFree);
  CHECK(code_of([&] { decompose_quotient(free_monoid(2), {0, 0}); }) == ErrorCode::kPreconditionError);
  CHECK(code_of([&] { decompose_quotient(free_monoid(2), {-1, 0}); }) == ErrorCode::kPreconditionError);
  auto t2 = decompose_quotient(free_monoid(2), {2, 2});
  CHECK(t2.torsion_order() == 2);
  CHECK(t2.torsion_invariants() == std::vector<BigInt>{2});
}

TEST_CASE("decomposition of free monoids") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
    IVec rho(r);
    for (auto& x : rho) x = testing::uniform(rng, 0, 3);
    if (std::all_of(rho.begin(), rho.end(), [](std::int64_t x) { return x == 0; })) rho[0] = 1;
    auto dec = decompose_quotient(free_monoid(r), rho);
    CHECK(dec.free_rank() + dec.sharp_rank() + 1 == r);
    std::int64_t g = 0;
    for (auto x : rho) g = std::gcd(g, x);
    CHECK(dec.torsion_order() == BigInt(static_cast<long>(g)));
    CHECK(round_trip_holds(free_monoid(r), rho));
  }
}

TEST_CASE("round trip on the corpus") {
  CHECK(round_trip_holds(free_monoid(2), {1, 1}));
  CHECK(round_trip_holds(free_monoid(3), {1, 1, 0}));
  CHECK(round_trip_holds(free_monoid(3), {1, 1, 1}));
  CHECK(round_trip_holds(AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}}), {1, 1}));
  CHECK(round_trip_holds(AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}}), {1, 0}));
  CHECK(round_trip_holds(AffineMonoid(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {0, 0, 1}}), {1, 1, 1}));
  CHECK(round_trip_holds(free_monoid(2), {2, 4}));
}

TEST_CASE("lifting chi") {
  auto n2 = free_monoid(2);
  auto l1 = lift_chi(n2, decompose_quotient(n2, {1, 1}));
  CHECK(l1.images == std::vector<IVec>{{1, 0}});
  auto n3 = free_monoid(3);
  auto l2 = lift_chi(n3, decompose_quotient(n3, {1, 1, 0}));
  CHECK(l2.images == std::vector<IVec>{{1, 0, 0}, {0, 0, 1}});
  auto l3 = lift_chi(n3, decompose_quotient(n3, {1, 1, 1}));
  CHECK(l3.images == std::vector<IVec>{{1, 0, 0}, {0, 1, 0}});
  auto n1 = free_monoid(1);
  auto l0 = lift_chi(n1, decompose_quotient(n1, {1}));
  CHECK(l0.images.empty());
  // Lifts map onto chi_0 class by class.
  auto p = AffineMonoid(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {0, 0, 1}});
  auto dec = decompose_quotient(p, {1, 1, 1});
  auto lift = lift_chi(p, dec);
  for (std::size_t i = 0; i < dec.dimension(); ++i) {
    CHECK(dec.classify(lift.images[i]) == dec.chi0(i));
    CHECK(p.combine(lift.witnesses[i]) == lift.images[i]);
  }
}

TEST_CASE("torsion invertibility") {
  auto m2 = DvrModel::mixed(BigInt(2));
  auto n2 = free_monoid(2);
  CHECK(torsion_invertibility_check(decompose_quotient(n2, {1, 1}), m2));
  CHECK(torsion_invertibility_check(decompose_quotient(n2, {3, 3}), m2));
  CHECK_FALSE(torsion_invertibility_check(decompose_quotient(n2, {2, 2}), m2));
  CHECK(torsion_invertibility_check(decompose_quotient(n2, {2, 2}), DvrModel::equichar0()));
}
