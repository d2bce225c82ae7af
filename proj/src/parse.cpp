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

#include "logchart/parse.hpp"

#include <cctype>

namespace logchart::expr {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<Node> run() {
    auto node = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected character");
    return node;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::kParseError,
         what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static std::unique_ptr<Node> binary(Node::Kind kind, std::unique_ptr<Node> a, std::unique_ptr<Node> b) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  std::unique_ptr<Node> parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        auto rhs = parse_term();
        lhs = binary(c == '+' ? Node::Kind::kAdd : Node::Kind::kSub, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  bool starts_primary(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  std::unique_ptr<Node> parse_term() {
    auto lhs = parse_unary();
    for (;;) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        auto rhs = parse_unary();
        lhs = binary(c == '*' ? Node::Kind::kMul : Node::Kind::kDiv, std::move(lhs), std::move(rhs));
      } else if (starts_primary(c)) {
        auto rhs = parse_power();
        lhs = binary(Node::Kind::kMul, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> parse_unary() {
    char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      auto inner = parse_unary();
      if (c == '+') return inner;
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::kNeg;
      n->lhs = std::move(inner);
      return n;
    }
    return parse_power();
  }

  std::unique_ptr<Node> parse_power() {
    auto base = parse_primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected non-negative integer exponent");
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 15) error("exponent too large");
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::kPow;
      n->exponent = std::stoll(digits);
      n->lhs = std::move(base);
      if (peek() == '^') error("chained exponent is ambiguous; use parentheses");
      return n;
    }
    return base;
  }

  std::unique_ptr<Node> parse_primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      auto inner = parse_expr();
      if (peek() != ')') error("expected ')'");
      ++pos_;
      return inner;
    }
    auto n = std::make_unique<Node>();
    std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      n->kind = Node::Kind::kNumber;
      n->number = BigInt(std::string(text_.substr(start, pos_ - start)));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      n->kind = Node::Kind::kIdent;
      n->ident = std::string(text_.substr(start, pos_ - start));
      return n;
    }
    error(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<Node> parse(std::string_view text) { return Parser(text).run(); }

RatFunc parse_ratfunc(std::string_view text, std::string_view var) {
  struct Alg {
    std::string_view var;
    RatFunc number(const BigInt& n) { return RatFunc(Rat(n)); }
    RatFunc ident(const std::string& name) {
      if (name == var) return RatFunc::variable();
      fail(ErrorCode::kParseError, "unknown symbol '" + name + "' in rational function of " + std::string(var));
    }
    RatFunc div(const RatFunc& a, const RatFunc& b) { return a / b; }
    RatFunc pow(const RatFunc& a, std::int64_t k) {
      RatFunc r(Rat(1));
      for (std::int64_t i = 0; i < k; ++i) r *= a;
      return r;
    }
  } alg{var};
  auto tree = parse(text);
  return evaluate<RatFunc>(*tree, alg);
}

}  // namespace logchart::expr
