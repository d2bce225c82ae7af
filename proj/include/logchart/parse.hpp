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

// Arithmetic expression parser shared by every textual input: polynomials,
// DVR elements, and rational functions. Parsing produces an AST which is then
// folded into whatever algebra the caller supplies.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/')? unary)*          juxtaposition multiplies
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "logchart/coeff.hpp"

namespace logchart::expr {

struct Node {
  enum class Kind { kNumber, kIdent, kAdd, kSub, kMul, kDiv, kNeg, kPow };
  Kind kind = Kind::kNumber;
  BigInt number;
  std::string ident;
  std::int64_t exponent = 0;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

// Throws Error(kParseError) with the offending position.
std::unique_ptr<Node> parse(std::string_view text);

// Folds an AST into an algebra providing number(BigInt), ident(string),
// div(a, b) and pow(a, k); +, -, * and unary minus come from T itself.
template <class T, class Algebra>
T evaluate(const Node& node, Algebra& alg) {
  switch (node.kind) {
    case Node::Kind::kNumber:
      return alg.number(node.number);
    case Node::Kind::kIdent:
      return alg.ident(node.ident);
    case Node::Kind::kAdd:
      return evaluate<T>(*node.lhs, alg) + evaluate<T>(*node.rhs, alg);
    case Node::Kind::kSub:
      return evaluate<T>(*node.lhs, alg) - evaluate<T>(*node.rhs, alg);
    case Node::Kind::kMul:
      return evaluate<T>(*node.lhs, alg) * evaluate<T>(*node.rhs, alg);
    case Node::Kind::kDiv:
      return alg.div(evaluate<T>(*node.lhs, alg), evaluate<T>(*node.rhs, alg));
    case Node::Kind::kNeg:
      return -evaluate<T>(*node.lhs, alg);
    case Node::Kind::kPow:
      return alg.pow(evaluate<T>(*node.lhs, alg), node.exponent);
  }
  fail(ErrorCode::kParseError, "corrupt expression tree");
}

// Univariate rational function in the named variable.
RatFunc parse_ratfunc(std::string_view text, std::string_view var = "t");

}  // namespace logchart::expr
