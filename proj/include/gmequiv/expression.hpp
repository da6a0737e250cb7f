#pragma once

// Arithmetic expressions in one variable `t`, used to configure custom kernels.
//
// Grammar (EBNF), lowest precedence first:
//
//   expr    = term , { ("+" | "-") , term } ;
//   term    = unary , { ("*" | "/") , unary } ;
//   unary   = "-" , unary | power ;
//   power   = primary , [ "^" , unary ] ;          (* right associative *)
//   primary = number | "t" | func , "(" , expr , ")" | "(" , expr , ")" ;
//   func    = "exp" | "sin" | "cos" | "sqrt" | "log" ;
//   number  = digits , [ "." , digits ] , [ ("e" | "E") , [ "+" | "-" ] , digits ] ;
//
// `^` binds tighter than unary minus, so "-t^2" is -(t^2).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>

#include "gmequiv/errors.hpp"

namespace gmequiv {

enum class BinaryOp : std::uint8_t { add, sub, mul, div, pow };
enum class Function : std::uint8_t { exp, sin, cos, sqrt, log };

class Expression {
 public:
  struct Number {
    double value;
  };
  struct Variable {};
  struct Negate {
    std::shared_ptr<const Expression> operand;
  };
  struct Binary {
    BinaryOp op;
    std::shared_ptr<const Expression> lhs;
    std::shared_ptr<const Expression> rhs;
  };
  struct Call {
    Function fn;
    std::shared_ptr<const Expression> arg;
  };
  using Node = std::variant<Number, Variable, Negate, Binary, Call>;

  explicit Expression(Node node) : node_(std::move(node)) {}

  const Node& node() const noexcept { return node_; }

  /// Evaluates at t. Throws EvaluationError on a domain error or a non-finite result.
  double operator()(double t) const {
    const double r = eval(t);
    if (!std::isfinite(r)) {
      throw EvaluationError("expression '" + to_string() + "' is not finite at t=" +
                            std::to_string(t));
    }
    return r;
  }

  /// Fully parenthesized form; parses back to an identical tree.
  std::string to_string() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  double eval(double t) const;

  Node node_;
};

namespace detail {

inline const char* function_name(Function fn) {
  switch (fn) {
    case Function::exp: return "exp";
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::sqrt: return "sqrt";
    case Function::log: return "log";
  }
  return "?";
}

inline char op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return '+';
    case BinaryOp::sub: return '-';
    case BinaryOp::mul: return '*';
    case BinaryOp::div: return '/';
    case BinaryOp::pow: return '^';
  }
  return '?';
}

inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  std::shared_ptr<const Expression> parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw SyntaxError(pos_, "operator or end of input");
    return e;
  }

 private:
  using Ptr = std::shared_ptr<const Expression>;

  static Ptr make(Expression::Node n) { return std::make_shared<const Expression>(std::move(n)); }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
  }

  Ptr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Expression::Binary{BinaryOp::add, lhs, term()});
      } else if (accept('-')) {
        lhs = make(Expression::Binary{BinaryOp::sub, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  Ptr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Expression::Binary{BinaryOp::mul, lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Expression::Binary{BinaryOp::div, lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  Ptr unary() {
    if (accept('-')) return make(Expression::Negate{unary()});
    return power();
  }

  Ptr power() {
    auto base = primary();
    if (accept('^')) return make(Expression::Binary{BinaryOp::pow, base, unary()});
    return base;
  }

  Ptr primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError(pos_, "number, 't', function or '('");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      expect(')');
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (is_alpha(c)) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (is_alpha(src_[pos_]) || (src_[pos_] >= '0' && src_[pos_] <= '9')))
        ++pos_;
      const std::string_view id = src_.substr(start, pos_ - start);
      if (id == "t") return make(Expression::Variable{});
      Function fn;
      if (id == "exp") fn = Function::exp;
      else if (id == "sin") fn = Function::sin;
      else if (id == "cos") fn = Function::cos;
      else if (id == "sqrt") fn = Function::sqrt;
      else if (id == "log") fn = Function::log;
      else throw UnknownIdentifier(std::string(id));
      expect('(');
      auto arg = expr();
      expect(')');
      return make(Expression::Call{fn, arg});
    }
    throw SyntaxError(pos_, "number, 't', function or '('");
  }

  Ptr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
      return pos_ - s;
    };
    if (digits() == 0) throw SyntaxError(start, "digit");
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      if (digits() == 0) throw SyntaxError(pos_, "digit after '.'");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw SyntaxError(pos_, "exponent digits");
    }
    double value = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc{} || res.ptr != src_.data() + pos_) throw SyntaxError(start, "number");
    return make(Expression::Number{value});
  }

  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline double Expression::eval(double t) const {
  struct Visitor {
    double t;
    double operator()(const Number& n) const { return n.value; }
    double operator()(const Variable&) const { return t; }
    double operator()(const Negate& n) const { return -n.operand->eval(t); }
    double operator()(const Binary& b) const {
      const double x = b.lhs->eval(t);
      const double y = b.rhs->eval(t);
      switch (b.op) {
        case BinaryOp::add: return x + y;
        case BinaryOp::sub: return x - y;
        case BinaryOp::mul: return x * y;
        case BinaryOp::div:
          if (y == 0.0) throw EvaluationError("division by zero at t=" + std::to_string(t));
          return x / y;
        case BinaryOp::pow: {
          const double r = std::pow(x, y);
          if (std::isnan(r)) throw EvaluationError("pow domain error at t=" + std::to_string(t));
          return r;
        }
      }
      return 0.0;
    }
    double operator()(const Call& c) const {
      const double x = c.arg->eval(t);
      switch (c.fn) {
        case Function::exp: return std::exp(x);
        case Function::sin: return std::sin(x);
        case Function::cos: return std::cos(x);
        case Function::sqrt:
          if (x < 0.0) throw EvaluationError("sqrt of negative value at t=" + std::to_string(t));
          return std::sqrt(x);
        case Function::log:
          if (x <= 0.0) throw EvaluationError("log of non-positive value at t=" + std::to_string(t));
          return std::log(x);
      }
      return 0.0;
    }
  };
  return std::visit(Visitor{t}, node_);
}

inline std::string Expression::to_string() const {
  struct Visitor {
    std::string operator()(const Number& n) const { return detail::format_double(n.value); }
    std::string operator()(const Variable&) const { return "t"; }
    std::string operator()(const Negate& n) const { return "(-" + n.operand->to_string() + ")"; }
    std::string operator()(const Binary& b) const {
      return "(" + b.lhs->to_string() + " " + detail::op_symbol(b.op) + " " + b.rhs->to_string() + ")";
    }
    std::string operator()(const Call& c) const {
      return std::string(detail::function_name(c.fn)) + "(" + c.arg->to_string() + ")";
    }
  };
  return std::visit(Visitor{}, node_);
}

inline bool operator==(const Expression& a, const Expression& b) {
  if (a.node_.index() != b.node_.index()) return false;
  struct Visitor {
    const Expression::Node& other;
    bool operator()(const Expression::Number& n) const {
      return n.value == std::get<Expression::Number>(other).value;
    }
    bool operator()(const Expression::Variable&) const { return true; }
    bool operator()(const Expression::Negate& n) const {
      return *n.operand == *std::get<Expression::Negate>(other).operand;
    }
    bool operator()(const Expression::Binary& x) const {
      const auto& y = std::get<Expression::Binary>(other);
      return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
    }
    bool operator()(const Expression::Call& x) const {
      const auto& y = std::get<Expression::Call>(other);
      return x.fn == y.fn && *x.arg == *y.arg;
    }
  };
  return std::visit(Visitor{b.node_}, a.node_);
}

/// Parses `source`; throws SyntaxError (with byte offset) or UnknownIdentifier.
inline std::shared_ptr<const Expression> parse_expression(std::string_view source) {
  return detail::Parser(source).parse();
}

}  // namespace gmequiv
