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

#include "logchart/demos.hpp"

#include <array>
#include <random>

#include "logchart/groebner.hpp"

namespace logchart {

PolyFraction::PolyFraction(Poly<Rat> n, Poly<Rat> d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) fail(ErrorCode::kDivisionByZero, "fraction with zero denominator");
}

PolyFraction operator+(const PolyFraction& a, const PolyFraction& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

PolyFraction operator-(const PolyFraction& a, const PolyFraction& b) {
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

PolyFraction operator*(const PolyFraction& a, const PolyFraction& b) { return {a.num * b.num, a.den * b.den}; }

bool P1xP1Report::ok() const {
  for (const auto& id : identities)
    if (!id.ok()) return false;
  return diagonal_excluded;
}

namespace {

// Variables of the identity ring Q[s, a, b, c, d].
enum : std::size_t { kS, kA, kB, kC, kD, kPairVars };
// Variables of Q[s, x, y, z] for maps out of X.
enum : std::size_t { kXs, kX, kY, kZ, kSurfaceVars };

PolyFraction whole(const Poly<Rat>& p) { return {p, Poly<Rat>::constant(p.nvars(), Rat(1))}; }

Poly<Rat> var(std::size_t n, std::size_t i) { return Poly<Rat>::variable(n, i, Rat(1)); }

struct SurfacePoint {
  PolyFraction x, y, z;
};

// s (2ac, 2bd, bc + ad) / (ad - bc).
SurfacePoint pair_to_surface(const PointPair& p, const PolyFraction& s) {
  PolyFraction two = whole(Poly<Rat>::constant(s.num.nvars(), Rat(2)));
  PolyFraction delta = p.a * p.d - p.b * p.c;
  PolyFraction inv{delta.den, delta.num};
  return {s * two * p.a * p.c * inv, s * two * p.b * p.d * inv, s * (p.b * p.c + p.a * p.d) * inv};
}

// Numerator of p0 q1 - p1 q0: zero iff (p0:p1) = (q0:q1), given neither is (0:0).
Poly<Rat> cross(const PolyFraction& p0, const PolyFraction& p1, const PolyFraction& q0, const PolyFraction& q1) {
  return (p0 * q1 - p1 * q0).num;
}

std::string residual_text(const Poly<Rat>& r, const VarSet& vars) { return to_string(r, vars); }

}  // namespace

std::vector<Rat> p1xp1_map_at(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& s) {
  if ((sgn(a) == 0 && sgn(b) == 0) || (sgn(c) == 0 && sgn(d) == 0))
    fail(ErrorCode::kDomainError, "(0:0) is not a point of P^1");
  Rat delta = a * d - b * c;
  if (sgn(delta) == 0) fail(ErrorCode::kDomainError, "point pair lies on the diagonal");
  return {s * 2 * a * c / delta, s * 2 * b * d / delta, s * (b * c + a * d) / delta};
}

P1xP1Report demo_p1xp1() {
  P1xP1Report report;
  const VarSet pair_vars({"s", "a", "b", "c", "d"});
  const std::size_t n = kPairVars;
  PointPair pt{whole(var(n, kA)), whole(var(n, kB)), whole(var(n, kC)), whole(var(n, kD))};
  PolyFraction s = whole(var(n, kS));
  SurfacePoint img = pair_to_surface(pt, s);

  // (1) image lies on xy = z^2 - s^2.
  Poly<Rat> on_surface = (img.x * img.y - img.z * img.z + s * s).num;
  report.identities.push_back({"image satisfies xy = z^2 - pi", residual_text(on_surface, pair_vars)});

  // (2) g o f = id on both charts, compared as points of P^1 x P^1.
  PolyFraction z_minus = img.z - s, z_plus = img.z + s;
  Poly<Rat> res = cross(img.x, z_minus, pt.a, pt.b);
  report.identities.push_back({"g o f = id, chart z != s, first factor", residual_text(res, pair_vars)});
  res = cross(z_minus, img.y, pt.c, pt.d);
  report.identities.push_back({"g o f = id, chart z != s, second factor", residual_text(res, pair_vars)});
  res = cross(z_plus, img.y, pt.a, pt.b);
  report.identities.push_back({"g o f = id, chart z != -s, first factor", residual_text(res, pair_vars)});
  res = cross(img.x, z_plus, pt.c, pt.d);
  report.identities.push_back({"g o f = id, chart z != -s, second factor", residual_text(res, pair_vars)});
  for (const auto* coord : {&z_minus, &z_plus, &img.x, &img.y})
    if (coord->is_zero()) fail(ErrorCode::kIdentityFailed, "a chart coordinate vanishes identically");

  // (3) f o g = id on X, modulo xy - z^2 + s^2.
  const VarSet surf_vars({"s", "x", "y", "z"});
  const std::size_t m = kSurfaceVars;
  Poly<Rat> rel = var(m, kX) * var(m, kY) - var(m, kZ) * var(m, kZ) + var(m, kXs) * var(m, kXs);
  auto gb = buchberger<Rat>({rel}, MonomialOrder::lex(m));
  PolyFraction ss = whole(var(m, kXs)), x = whole(var(m, kX)), y = whole(var(m, kY)), z = whole(var(m, kZ));
  const std::array<std::pair<const char*, PointPair>, 2> charts = {{
      {"chart z != s", PointPair{x, z - ss, z - ss, y}},
      {"chart z != -s", PointPair{z + ss, y, x, z + ss}},
  }};
  for (const auto& [label, g] : charts) {
    PolyFraction delta = g.a * g.d - g.b * g.c;
    if (gb.normal_form(delta.num).is_zero())
      fail(ErrorCode::kIdentityFailed, std::string("delta vanishes on X, ") + label);
    SurfacePoint back = pair_to_surface(g, ss);
    const std::array<std::pair<const char*, PolyFraction>, 3> coords = {{
        {"x", back.x - x},
        {"y", back.y - y},
        {"z", back.z - z},
    }};
    for (const auto& [name, diff] : coords)
      report.identities.push_back({std::string("f o g = id, ") + label + ", " + name,
                                   residual_text(gb.normal_form(diff.num), surf_vars)});
  }

  try {
    p1xp1_map_at(Rat(1), Rat(2), Rat(1), Rat(2), Rat(3));
  } catch (const Error& e) {
    report.diagonal_excluded = e.code() == ErrorCode::kDomainError;
  }

  for (const auto& id : report.identities)
    if (!id.ok()) fail(ErrorCode::kIdentityFailed, id.name + ": residual " + id.residual);
  return report;
}

ContractionReport demo_prop72(const Poly<RatFunc>& f, int trials, std::uint64_t seed) {
  if (f.nvars() != 2) fail(ErrorCode::kInvalidArgument, "f must be a polynomial in x, y");
  auto specialize = [&](const Rat& c) -> std::optional<Poly<Rat>> {
    Poly<Rat> out(2);
    for (const auto& [m, v] : f.terms()) {
      if (sgn(v.den().eval(c)) == 0) return std::nullopt;
      out.add_term(m, v.eval(c));
    }
    return out;
  };

  ContractionReport report;
  const Poly<Rat> x = var(2, 0), y = var(2, 1);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  while (static_cast<int>(report.trials.size()) < trials) {
    Rat c(num(rng), den(rng));
    c.canonicalize();
    if (sgn(c) == 0) continue;
    auto fc = specialize(c);
    if (!fc) continue;
    Poly<Rat> g = x * derivative(*fc, 0) - y * derivative(*fc, 1);
    auto gb = buchberger<Rat>({x * y - Poly<Rat>::constant(2, c), g}, MonomialOrder::grevlex(2));
    report.trials.push_back({c, gb.is_unit_ideal()});
  }
  report.probe_etale = !report.trials.empty();
  for (const auto& t : report.trials) report.probe_etale = report.probe_etale && t.unit_ideal;

  auto f0 = specialize(Rat(0));
  if (!f0) fail(ErrorCode::kPreconditionError, "f has a pole at t = 0");
  const Poly<Rat> zero(2);
  report.contracts_x_component = substitute(*f0, {zero, y}, 2).is_constant();
  report.contracts_y_component = substitute(*f0, {x, zero}, 2).is_constant();
  return report;
}

AdjugateCheck matrix_identity_check(const Poly<Rat>& f) {
  if (f.nvars() != 2) fail(ErrorCode::kInvalidArgument, "f must be a polynomial in x, y");
  const Poly<Rat> x = var(2, 0), y = var(2, 1);
  const Poly<Rat> fx = derivative(f, 0), fy = derivative(f, 1);
  using Mat = std::array<std::array<Poly<Rat>, 2>, 2>;
  const Mat m = {{{fx, y}, {fy, x}}};
  const Mat adj = {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
  AdjugateCheck out;
  out.det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  out.det_matches = out.det == x * fx - y * fy;
  out.adjugate_identity = true;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Poly<Rat> entry = m[i][0] * adj[0][j] + m[i][1] * adj[1][j];
      Poly<Rat> expected = i == j ? out.det : Poly<Rat>(2);
      out.adjugate_identity = out.adjugate_identity && entry == expected;
    }
  }
  return out;
}

}  // namespace logchart
