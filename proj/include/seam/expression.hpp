/*
 *   Copyright 2026 The seam-rb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// A small arithmetic expression language for coefficient fields.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)*        (left associative)
//   exponent:= '-' exponent | primary
//   primary := number | variable | 'pi' | func '(' expr ')' | '(' expr ')'
//
// Variables are x, y, z and t; functions are sin, cos and exp.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "seam/error.hpp"

namespace seam {

struct EvalPoint {
  double x = 0.0, y = 0.0, z = 0.0, t = 0.0;
};

namespace expr {

enum class Kind { Number, Variable, Pi, Negate, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp };

struct Node {
  Kind kind;
  double value = 0.0;  // Number
  char variable = 0;   // Variable: one of x y z t
  std::shared_ptr<const Node> lhs, rhs;  // rhs unused by unary kinds
};

using NodePtr = std::shared_ptr<const Node>;

inline NodePtr make_number(double v) { return std::make_shared<const Node>(Node{Kind::Number, v, 0, {}, {}}); }
inline NodePtr make_variable(char c) { return std::make_shared<const Node>(Node{Kind::Variable, 0.0, c, {}, {}}); }
inline NodePtr make_leaf(Kind k) { return std::make_shared<const Node>(Node{k, 0.0, 0, {}, {}}); }
inline NodePtr make_unary(Kind k, NodePtr a) {
  return std::make_shared<const Node>(Node{k, 0.0, 0, std::move(a), {}});
}
inline NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
  return std::make_shared<const Node>(Node{k, 0.0, 0, std::move(a), std::move(b)});
}

inline double evaluate(const Node& n, const EvalPoint& p) {
  switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Pi: return std::numbers::pi;
    case Kind::Variable:
      switch (n.variable) {
        case 'x': return p.x;
        case 'y': return p.y;
        case 'z': return p.z;
        default: return p.t;
      }
    case Kind::Negate: return -evaluate(*n.lhs, p);
    case Kind::Add: return evaluate(*n.lhs, p) + evaluate(*n.rhs, p);
    case Kind::Sub: return evaluate(*n.lhs, p) - evaluate(*n.rhs, p);
    case Kind::Mul: return evaluate(*n.lhs, p) * evaluate(*n.rhs, p);
    case Kind::Div: {
      const double den = evaluate(*n.rhs, p);
      if (den == 0.0) throw EvaluationError("division by zero");
      return evaluate(*n.lhs, p) / den;
    }
    case Kind::Pow: return std::pow(evaluate(*n.lhs, p), evaluate(*n.rhs, p));
    case Kind::Sin: return std::sin(evaluate(*n.lhs, p));
    case Kind::Cos: return std::cos(evaluate(*n.lhs, p));
    case Kind::Exp: return std::exp(evaluate(*n.lhs, p));
  }
  return 0.0;
}

inline bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Kind::Number) return a.value == b.value;
  if (a.kind == Kind::Variable) return a.variable == b.variable;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

inline bool uses_variable(const Node& n, char v) {
  if (n.kind == Kind::Variable) return n.variable == v;
  return (n.lhs && uses_variable(*n.lhs, v)) || (n.rhs && uses_variable(*n.rhs, v));
}

// Fully parenthesised so that re-parsing reproduces the same tree.
inline std::string to_string(const Node& n) {
  switch (n.kind) {
    case Kind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      return buf;
    }
    case Kind::Pi: return "pi";
    case Kind::Variable: return std::string(1, n.variable);
    case Kind::Negate: return "(-" + to_string(*n.lhs) + ")";
    case Kind::Add: return "(" + to_string(*n.lhs) + "+" + to_string(*n.rhs) + ")";
    case Kind::Sub: return "(" + to_string(*n.lhs) + "-" + to_string(*n.rhs) + ")";
    case Kind::Mul: return "(" + to_string(*n.lhs) + "*" + to_string(*n.rhs) + ")";
    case Kind::Div: return "(" + to_string(*n.lhs) + "/" + to_string(*n.rhs) + ")";
    case Kind::Pow: return "(" + to_string(*n.lhs) + "^" + to_string(*n.rhs) + ")";
    case Kind::Sin: return "sin(" + to_string(*n.lhs) + ")";
    case Kind::Cos: return "cos(" + to_string(*n.lhs) + ")";
    case Kind::Exp: return "exp(" + to_string(*n.lhs) + ")";
  }
  return {};
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    NodePtr n = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return n;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) lhs = make_binary(Kind::Add, lhs, parse_term());
      else if (accept('-')) lhs = make_binary(Kind::Sub, lhs, parse_term());
      else return lhs;
    }
  }
  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) lhs = make_binary(Kind::Mul, lhs, parse_unary());
      else if (accept('/')) lhs = make_binary(Kind::Div, lhs, parse_unary());
      else return lhs;
    }
  }
  NodePtr parse_unary() {
    if (accept('-')) return make_unary(Kind::Negate, parse_unary());
    return parse_power();
  }
  NodePtr parse_power() {
    NodePtr base = parse_primary();
    while (accept('^')) base = make_binary(Kind::Pow, base, parse_exponent());
    return base;
  }
  NodePtr parse_exponent() {
    if (accept('-')) return make_unary(Kind::Negate, parse_exponent());
    return parse_primary();
  }
  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }
  NodePtr parse_number() {
    const std::size_t start = pos_;
    std::string buf(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) throw ParseError("malformed number", start);
    pos_ += static_cast<std::size_t>(end - buf.c_str());
    return make_number(v);
  }
  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == "x" || id == "y" || id == "z" || id == "t") return make_variable(id[0]);
    if (id == "pi") return make_leaf(Kind::Pi);
    Kind fn;
    if (id == "sin") fn = Kind::Sin;
    else if (id == "cos") fn = Kind::Cos;
    else if (id == "exp") fn = Kind::Exp;
    else throw ParseError("unknown identifier '" + std::string(id) + "'", start);
    expect('(');
    NodePtr arg = parse_expr();
    expect(')');
    return make_unary(fn, arg);
  }
};

}  // namespace expr

/// Immutable scalar field f(x, y, z, t) backed by a parsed expression.
class ScalarField {
 public:
  ScalarField() : root_(expr::make_number(0.0)) {}
  explicit ScalarField(expr::NodePtr root) : root_(std::move(root)) {}

  static ScalarField constant(double v) { return ScalarField(expr::make_number(v)); }

  double operator()(const EvalPoint& p) const { return expr::evaluate(*root_, p); }
  double operator()(double x, double y = 0.0, double z = 0.0, double t = 0.0) const {
    return (*this)(EvalPoint{x, y, z, t});
  }

  bool depends_on_time() const { return expr::uses_variable(*root_, 't'); }
  bool is_zero_constant() const { return root_->kind == expr::Kind::Number && root_->value == 0.0; }
  std::string to_string() const { return expr::to_string(*root_); }
  const expr::Node& root() const { return *root_; }

 private:
  expr::NodePtr root_;
};

inline ScalarField parse_expression(std::string_view text) {
  return ScalarField(expr::Parser(text).parse());
}

}  // namespace seam
