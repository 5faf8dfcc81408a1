#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tk/error.hpp"
#include "tk/rational.hpp"

// Symbol expressions:
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := ('-'|'+') factor | base ('^' ['-'] integer)?
//   base    := number ['i'] | 'i' | 'z' | 'zbar' | 's' | 'conj' '(' expr ')'
//            | 'B' '(' expr ')' | '(' expr ')'
// 'zbar' is z^-1 on the circle, 's' is an alias of the indeterminate used for
// half-plane input, B(a) is the Blaschke factor (z - a)/(1 - conj(a) z).

namespace tk::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class Var { Z, ZBar, S };
enum class BinaryOp { Add, Sub, Mul, Div };

struct Literal { Complex value; };
struct Variable { Var var; };
struct Conj { NodePtr arg; };
struct Blaschke { Complex a; };
struct Negate { NodePtr arg; };
struct Binary { BinaryOp op; NodePtr lhs, rhs; };
struct Power { NodePtr base; int exponent; };

struct Node {
  std::variant<Literal, Variable, Conj, Blaschke, Negate, Binary, Power> v;
};

inline bool same_tree(const Node& a, const Node& b);

inline bool same_tree(const NodePtr& a, const NodePtr& b) { return same_tree(*a, *b); }

inline bool same_tree(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, Literal>) return x.value == y.value;
        else if constexpr (std::is_same_v<T, Variable>) return x.var == y.var;
        else if constexpr (std::is_same_v<T, Conj>) return same_tree(x.arg, y.arg);
        else if constexpr (std::is_same_v<T, Blaschke>) return x.a == y.a;
        else if constexpr (std::is_same_v<T, Negate>) return same_tree(x.arg, y.arg);
        else if constexpr (std::is_same_v<T, Binary>)
          return x.op == y.op && same_tree(x.lhs, y.lhs) && same_tree(x.rhs, y.rhs);
        else return x.exponent == y.exponent && same_tree(x.base, y.base);
      },
      a.v);
}

/// Parsed expression plus its source text.
struct SymbolExpression {
  std::string source;
  NodePtr root;
};

namespace detail {

inline NodePtr make(auto node) { return std::make_shared<const Node>(Node{std::move(node)}); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty expression");
    auto e = parse_expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg + " at position " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr parse_expr() {
    auto lhs = parse_term();
    while (true) {
      if (accept('+')) lhs = make(Binary{BinaryOp::Add, lhs, parse_term()});
      else if (accept('-')) lhs = make(Binary{BinaryOp::Sub, lhs, parse_term()});
      else return lhs;
    }
  }

  NodePtr parse_term() {
    auto lhs = parse_factor();
    while (true) {
      if (accept('*')) lhs = make(Binary{BinaryOp::Mul, lhs, parse_factor()});
      else if (accept('/')) lhs = make(Binary{BinaryOp::Div, lhs, parse_factor()});
      else return lhs;
    }
  }

  NodePtr parse_factor() {
    if (accept('-')) return make(Negate{parse_factor()});
    if (accept('+')) return parse_factor();
    auto base = parse_base();
    if (accept('^')) {
      skip_space();
      const bool negative = accept('-');
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return make(Power{base, negative ? -e : e});
    }
    return base;
  }

  NodePtr parse_base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (accept('(')) {
      auto e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const auto word = text_.substr(start, pos_ - start);
      if (word == "z") return make(Variable{Var::Z});
      if (word == "zbar") return make(Variable{Var::ZBar});
      if (word == "s") return make(Variable{Var::S});
      if (word == "i") return make(Literal{Complex(0.0, 1.0)});
      if (word == "conj") {
        expect('(');
        auto e = parse_expr();
        expect(')');
        return make(Conj{e});
      }
      if (word == "B") {
        expect('(');
        const std::size_t arg_pos = pos_;
        auto e = parse_expr();
        expect(')');
        const Complex a = constant_value(*e, arg_pos);
        if (std::abs(a) >= 1.0)
          throw Error(ErrorCode::BlaschkeParameterOutOfDisc,
                      "B(a) needs |a| < 1 at position " + std::to_string(arg_pos), arg_pos);
        return make(Blaschke{a});
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr parse_number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        !(pos_ + 1 < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return make(Literal{Complex(0.0, x)});
    }
    return make(Literal{Complex(x, 0.0)});
  }

  Complex constant_value(const Node& n, std::size_t at) const {
    return std::visit(
        [&](const auto& x) -> Complex {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Literal>) return x.value;
          else if constexpr (std::is_same_v<T, Negate>) return -constant_value(*x.arg, at);
          else if constexpr (std::is_same_v<T, Binary>) {
            const Complex l = constant_value(*x.lhs, at), r = constant_value(*x.rhs, at);
            switch (x.op) {
              case BinaryOp::Add: return l + r;
              case BinaryOp::Sub: return l - r;
              case BinaryOp::Mul: return l * r;
              case BinaryOp::Div: return l / r;
            }
            return {};
          } else if constexpr (std::is_same_v<T, Power>) return std::pow(constant_value(*x.base, at), x.exponent);
          else throw Error(ErrorCode::SyntaxError, "B(...) needs a constant argument", at);
        },
        n.v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string literal_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string complex_text(Complex c) {
  if (c.imag() == 0.0) return literal_text(c.real());
  if (c.real() == 0.0) return literal_text(c.imag()) + "i";
  std::string s = literal_text(c.real());
  s += c.imag() < 0 ? "-" : "+";
  return s + literal_text(std::abs(c.imag())) + "i";
}

// Precedence: 1 sums, 2 products, 3 unary, 4 powers and atoms.
inline int precedence(const Node& n) {
  if (const auto* b = std::get_if<Binary>(&n.v))
    return (b->op == BinaryOp::Add || b->op == BinaryOp::Sub) ? 1 : 2;
  if (std::holds_alternative<Negate>(n.v)) return 3;
  if (std::holds_alternative<Power>(n.v)) return 4;
  return 5;
}

inline std::string print(const Node& n, int min_prec);

inline std::string wrap(const Node& n, int min_prec) {
  const std::string s = print(n, 0);
  return precedence(n) < min_prec ? "(" + s + ")" : s;
}

inline std::string print(const Node& n, int) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Literal>) return complex_text(x.value);
        else if constexpr (std::is_same_v<T, Variable>)
          return x.var == Var::Z ? "z" : x.var == Var::ZBar ? "zbar" : "s";
        else if constexpr (std::is_same_v<T, Conj>) return "conj(" + print(*x.arg, 0) + ")";
        else if constexpr (std::is_same_v<T, Blaschke>) return "B(" + complex_text(x.a) + ")";
        else if constexpr (std::is_same_v<T, Negate>) return "-" + wrap(*x.arg, 3);
        else if constexpr (std::is_same_v<T, Binary>) {
          const int p = (x.op == BinaryOp::Add || x.op == BinaryOp::Sub) ? 1 : 2;
          const char op = x.op == BinaryOp::Add ? '+' : x.op == BinaryOp::Sub ? '-' : x.op == BinaryOp::Mul ? '*' : '/';
          return wrap(*x.lhs, p) + op + wrap(*x.rhs, p + 1);
        } else {
          return wrap(*x.base, 5) + "^" + std::to_string(x.exponent);
        }
      },
      n.v);
}

}  // namespace detail

inline SymbolExpression parse_expression(std::string_view text) {
  return {std::string(text), detail::Parser(text).parse()};
}

/// Source form that parses back to an identical tree.
inline std::string print(const SymbolExpression& e) { return detail::print(*e.root, 0); }

inline RationalFunction lower(const Node& n) {
  return std::visit(
      [](const auto& x) -> RationalFunction {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Literal>) return RationalFunction::constant(x.value);
        else if constexpr (std::is_same_v<T, Variable>)
          return RationalFunction::monomial(x.var == Var::ZBar ? -1 : 1);
        else if constexpr (std::is_same_v<T, Conj>) return circle_conjugate(lower(*x.arg));
        else if constexpr (std::is_same_v<T, Blaschke>) {
          if (x.a == Complex{}) return RationalFunction::z();
          return RationalFunction::from_roots(-1.0 / std::conj(x.a), {{x.a, 1}}, {{1.0 / std::conj(x.a), 1}});
        } else if constexpr (std::is_same_v<T, Negate>) return -lower(*x.arg);
        else if constexpr (std::is_same_v<T, Binary>) {
          const auto l = lower(*x.lhs);
          const auto r = lower(*x.rhs);
          switch (x.op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div:
              if (r.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
              return l / r;
          }
          return {};
        } else {
          const auto b = lower(*x.base);
          if (b.is_zero() && x.exponent < 0) throw Error(ErrorCode::DivisionByZero, "0 to a negative power");
          if (b.is_zero()) return x.exponent == 0 ? RationalFunction::constant(1.0) : RationalFunction{};
          return b.pow(x.exponent);
        }
      },
      n.v);
}

inline RationalFunction lower(const SymbolExpression& e) { return lower(*e.root); }

inline RationalFunction parse_rational(std::string_view text) { return lower(parse_expression(text)); }

}  // namespace tk::expr
