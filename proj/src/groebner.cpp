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

#include "logchart/groebner.hpp"

namespace logchart {

namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

Exponent to_exponent(const BigInt& v) {
  if (!v.fits_slong_p()) fail(ErrorCode::kExponentOverflow, "relation entry does not fit an exponent");
  return v.get_si();
}

}  // namespace

MonomialOrder MonomialOrder::lex(std::size_t nvars) { return MonomialOrder({{iota(nvars), Kind::kLex}}, nvars); }

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  return MonomialOrder({{iota(nvars), Kind::kGrevlex}}, nvars);
}

MonomialOrder MonomialOrder::block(std::vector<Block> blocks, std::size_t nvars) {
  std::vector<bool> seen(nvars, false);
  std::size_t count = 0;
  for (const auto& b : blocks) {
    if (b.vars.empty()) fail(ErrorCode::kInvalidArgument, "empty block in monomial order");
    for (std::size_t v : b.vars) {
      if (v >= nvars || seen[v]) fail(ErrorCode::kInvalidArgument, "blocks must partition the variables");
      seen[v] = true;
      ++count;
    }
  }
  if (count != nvars) fail(ErrorCode::kInvalidArgument, "blocks must partition the variables");
  return MonomialOrder(std::move(blocks), nvars);
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& blk : blocks_) {
    if (blk.kind == Kind::kLex) {
      for (std::size_t v : blk.vars)
        if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
      continue;
    }
    Exponent da = 0, db = 0;
    for (std::size_t v : blk.vars) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da > db ? 1 : -1;
    for (auto it = blk.vars.rbegin(); it != blk.vars.rend(); ++it)
      if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  std::string out;
  for (const auto& blk : blocks_) {
    if (!out.empty()) out += " > ";
    out += blk.kind == Kind::kLex ? "lex(" : "grevlex(";
    for (std::size_t i = 0; i < blk.vars.size(); ++i) out += (i ? "," : "") + std::to_string(blk.vars[i]);
    out += ")";
  }
  return out;
}

std::vector<Poly<Rat>> toric_ideal(const std::vector<std::vector<BigInt>>& relation_basis, std::size_t nvars,
                                   const GbBudget& budget) {
  if (relation_basis.empty()) return {};
  const std::size_t z = nvars;
  std::vector<Poly<Rat>> gens;
  for (const auto& rel : relation_basis) {
    if (rel.size() != nvars) fail(ErrorCode::kInvalidArgument, "relation length does not match the ring");
    Monomial plus(nvars + 1, 0), minus(nvars + 1, 0);
    for (std::size_t i = 0; i < nvars; ++i) {
      Exponent e = to_exponent(rel[i]);
      (e > 0 ? plus[i] : minus[i]) = e > 0 ? e : -e;
    }
    gens.push_back(Poly<Rat>::term(plus, Rat(1)) - Poly<Rat>::term(minus, Rat(1)));
  }
  Monomial all(nvars + 1, 1);
  gens.push_back(Poly<Rat>::term(all, Rat(1)) - Poly<Rat>::constant(nvars + 1, Rat(1)));
  auto ord = MonomialOrder::block({{{z}, MonomialOrder::Kind::kLex}, {iota(nvars), MonomialOrder::Kind::kGrevlex}},
                                  nvars + 1);
  auto kept = elimination_ideal(gens, ord, {z}, budget);
  std::vector<Poly<Rat>> out;
  for (const auto& g : kept) {
    Poly<Rat> r(nvars);
    // z has exponent 0 in every kept element.
    for (const auto& [m, c] : g.terms()) r.add_term(Monomial(m.begin(), m.begin() + nvars), c);
    out.push_back(clear_denominators(r));
  }
  return out;
}

}  // namespace logchart
