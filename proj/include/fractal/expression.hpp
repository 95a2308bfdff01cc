#pragma once

/// Micro-expression grammar for function arguments on the command line:
/// numbers, x, S(x), + - * / ^ (right associative), unary minus,
/// parentheses and exp, sin, cos, sqrt, log. `pi` is a constant.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fractal/falpha.hpp"
#include "fractal/staircase.hpp"

namespace fractal {

class Expression {
 public:
  static Expression parse(const std::string& text) {
    Parser p{text, 0};
    auto root = p.parse_sum();
    p.skip_space();
    if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
    return Expression(std::move(root), text);
  }

  [[nodiscard]] const std::string& text() const { return text_; }

  /// Value at x; S(.) nodes use the given staircase.
  [[nodiscard]] double eval_x(const StaircaseFn& sf, double x) const {
    return eval(*root_, x, 0.0, &sf);
  }

  /// Value with every S(x) replaced by u. Only meaningful when
  /// !uses_bare_x().
  [[nodiscard]] double eval_u(double u) const { return eval(*root_, 0.0, u, nullptr); }

  /// True when x occurs other than as the argument of S(x).
  [[nodiscard]] bool uses_bare_x() const { return bare_x(*root_); }

  /// Staircase form when x only appears through S(x), x form otherwise.
  [[nodiscard]] FractalFn to_fractal_fn(const StaircaseFn& sf) const {
    auto self = std::make_shared<Expression>(*this);
    if (!uses_bare_x()) return FractalFn::of_staircase([self](double u) { return self->eval_u(u); });
    return FractalFn::of_x([self, sf](double x) { return self->eval_x(sf, x); });
  }

 private:
  enum class Kind { Number, X, Staircase, Neg, Add, Sub, Mul, Div, Pow, Exp, Sin, Cos, Sqrt, Log };

  struct Node {
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Parser {
    const std::string& s;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& what) const {
      throw std::invalid_argument("expression '" + s + "' at column " + std::to_string(pos + 1) +
                                  ": " + what);
    }

    void skip_space() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool accept(char c) {
      skip_space();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    void expect(char c) {
      if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    static NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
      return std::make_shared<const Node>(Node{k, v, std::move(a), std::move(b)});
    }

    NodePtr parse_sum() {
      auto lhs = parse_product();
      for (;;) {
        if (accept('+')) {
          lhs = make(Kind::Add, lhs, parse_product());
        } else if (accept('-')) {
          lhs = make(Kind::Sub, lhs, parse_product());
        } else {
          return lhs;
        }
      }
    }

    NodePtr parse_product() {
      auto lhs = parse_unary();
      for (;;) {
        if (accept('*')) {
          lhs = make(Kind::Mul, lhs, parse_unary());
        } else if (accept('/')) {
          lhs = make(Kind::Div, lhs, parse_unary());
        } else {
          return lhs;
        }
      }
    }

    NodePtr parse_unary() {
      if (accept('-')) return make(Kind::Neg, parse_unary());
      if (accept('+')) return parse_unary();
      return parse_power();
    }

    NodePtr parse_power() {
      auto base = parse_atom();
      if (accept('^')) return make(Kind::Pow, base, parse_unary());
      return base;
    }

    NodePtr parse_atom() {
      skip_space();
      if (pos >= s.size()) fail("unexpected end of input");
      const char c = s[pos];
      if (accept('(')) {
        auto inner = parse_sum();
        expect(')');
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        const char* begin = s.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos += static_cast<std::size_t>(end - begin);
        return make(Kind::Number, nullptr, nullptr, v);
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        const std::string name = s.substr(start, pos - start);
        if (name == "x") return make(Kind::X);
        if (name == "pi") return make(Kind::Number, nullptr, nullptr, std::numbers::pi);
        Kind k;
        if (name == "S") {
          k = Kind::Staircase;
        } else if (name == "exp") {
          k = Kind::Exp;
        } else if (name == "sin") {
          k = Kind::Sin;
        } else if (name == "cos") {
          k = Kind::Cos;
        } else if (name == "sqrt") {
          k = Kind::Sqrt;
        } else if (name == "log") {
          k = Kind::Log;
        } else {
          pos = start;
          fail("unknown name '" + name + "'");
        }
        expect('(');
        auto arg = parse_sum();
        expect(')');
        return make(k, arg);
      }
      fail("unexpected '" + std::string(1, c) + "'");
    }
  };

  Expression(NodePtr root, std::string text) : root_(std::move(root)), text_(std::move(text)) {}

  static bool bare_x(const Node& n) {
    if (n.kind == Kind::X) return true;
    if (n.kind == Kind::Staircase) return n.a->kind != Kind::X;
    return (n.a && bare_x(*n.a)) || (n.b && bare_x(*n.b));
  }

  static double eval(const Node& n, double x, double u, const StaircaseFn* sf) {
    switch (n.kind) {
      case Kind::Number: return n.value;
      case Kind::X: return x;
      case Kind::Staircase:
        if (sf == nullptr) return u;
        return cantor_eval(*sf, eval(*n.a, x, u, sf));
      case Kind::Neg: return -eval(*n.a, x, u, sf);
      case Kind::Add: return eval(*n.a, x, u, sf) + eval(*n.b, x, u, sf);
      case Kind::Sub: return eval(*n.a, x, u, sf) - eval(*n.b, x, u, sf);
      case Kind::Mul: return eval(*n.a, x, u, sf) * eval(*n.b, x, u, sf);
      case Kind::Div: return eval(*n.a, x, u, sf) / eval(*n.b, x, u, sf);
      case Kind::Pow: return std::pow(eval(*n.a, x, u, sf), eval(*n.b, x, u, sf));
      case Kind::Exp: return std::exp(eval(*n.a, x, u, sf));
      case Kind::Sin: return std::sin(eval(*n.a, x, u, sf));
      case Kind::Cos: return std::cos(eval(*n.a, x, u, sf));
      case Kind::Sqrt: return std::sqrt(eval(*n.a, x, u, sf));
      case Kind::Log: return std::log(eval(*n.a, x, u, sf));
    }
    return 0.0;
  }

  NodePtr root_;
  std::string text_;
};

}  // namespace fractal
