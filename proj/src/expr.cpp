#include "gsk/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace gsk {

namespace {

enum class Op {
  kNumber,
  kVariable,
  kNeg,
  kExp,
  kLog,
  kSin,
  kCos,
  kSqrt,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPowInt,
};

}  // namespace

struct Expr::Node {
  Op op;
  Complex value{};                   // kNumber
  long exponent = 0;                 // kPowInt
  std::shared_ptr<const Node> lhs;   // unary operand or left operand
  std::shared_ptr<const Node> rhs;   // right operand
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_number(Complex v) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::kNumber;
  n->value = v;
  return n;
}

bool is_literal(const NodePtr& n, Complex v) {
  return n->op == Op::kNumber && n->value == v;
}

Complex eval_node(const Expr::Node& n, Complex z) {
  switch (n.op) {
    case Op::kNumber:
      return n.value;
    case Op::kVariable:
      return z;
    case Op::kNeg:
      return -eval_node(*n.lhs, z);
    case Op::kExp:
      return std::exp(eval_node(*n.lhs, z));
    case Op::kLog: {
      Complex u = eval_node(*n.lhs, z);
      if (u == Complex(0.0, 0.0)) throw NumericError("log of 0 in expression");
      if (u.imag() == 0.0 && u.real() < 0.0)
        throw NumericError("log branch violation: argument on the negative real axis");
      return std::log(u);
    }
    case Op::kSin:
      return std::sin(eval_node(*n.lhs, z));
    case Op::kCos:
      return std::cos(eval_node(*n.lhs, z));
    case Op::kSqrt:
      return std::sqrt(eval_node(*n.lhs, z));
    case Op::kAdd:
      return eval_node(*n.lhs, z) + eval_node(*n.rhs, z);
    case Op::kSub:
      return eval_node(*n.lhs, z) - eval_node(*n.rhs, z);
    case Op::kMul:
      return eval_node(*n.lhs, z) * eval_node(*n.rhs, z);
    case Op::kDiv: {
      Complex d = eval_node(*n.rhs, z);
      if (d == Complex(0.0, 0.0)) throw NumericError("division by zero in expression");
      return eval_node(*n.lhs, z) / d;
    }
    case Op::kPowInt: {
      Complex b = eval_node(*n.lhs, z);
      long e = n.exponent;
      if (e == 0) return Complex(1.0, 0.0);
      bool inv = e < 0;
      unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
      if (inv && b == Complex(0.0, 0.0))
        throw NumericError("division by zero in expression (negative power of 0)");
      Complex acc(1.0, 0.0), base = b;
      while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
      }
      return inv ? Complex(1.0, 0.0) / acc : acc;
    }
  }
  throw NumericError("corrupt expression node");
}

void print_complex(std::string& out, Complex v) {
  char buf[64];
  auto fmt = [&](double d) {
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return std::string(buf);
  };
  if (v.imag() == 0.0) {
    if (v.real() >= 0.0) {
      out += fmt(v.real());
    } else {
      out += "(0-" + fmt(-v.real()) + ")";
    }
    return;
  }
  // (re +/- |im|*i); negative parts are written 0-x since the grammar has
  // no unary minus.
  out += "(";
  if (v.real() >= 0.0) {
    out += fmt(v.real());
  } else {
    out += "0-" + fmt(-v.real());
  }
  out += (v.imag() >= 0.0) ? "+" : "-";
  out += fmt(std::abs(v.imag()));
  out += "*i)";
}

void print_node(std::string& out, const Expr::Node& n) {
  switch (n.op) {
    case Op::kNumber:
      print_complex(out, n.value);
      return;
    case Op::kVariable:
      out += "lambda";
      return;
    case Op::kNeg:
    case Op::kExp:
    case Op::kLog:
    case Op::kSin:
    case Op::kCos:
    case Op::kSqrt: {
      static const char* names[] = {"neg", "exp", "log", "sin", "cos", "sqrt"};
      out += names[static_cast<int>(n.op) - static_cast<int>(Op::kNeg)];
      out += "(";
      print_node(out, *n.lhs);
      out += ")";
      return;
    }
    case Op::kAdd:
    case Op::kSub:
    case Op::kMul:
    case Op::kDiv: {
      static const char* ops[] = {"+", "-", "*", "/"};
      out += "(";
      print_node(out, *n.lhs);
      out += ops[static_cast<int>(n.op) - static_cast<int>(Op::kAdd)];
      print_node(out, *n.rhs);
      out += ")";
      return;
    }
    case Op::kPowInt:
      out += "(";
      print_node(out, *n.lhs);
      out += ")^" + std::to_string(n.exponent);
      return;
  }
}

}  // namespace

Expr::Expr() : node_(make_number(Complex(0.0, 0.0))) {}

Expr Expr::number(Complex value) { return Expr(make_number(value)); }

Expr Expr::variable() { return Expr(make_node(Op::kVariable)); }

Expr Expr::neg(Expr u) {
  if (u.node_->op == Op::kNumber) return number(-u.node_->value);
  return Expr(make_node(Op::kNeg, u.node_));
}

Expr Expr::exp(Expr u) { return Expr(make_node(Op::kExp, u.node_)); }
Expr Expr::log(Expr u) { return Expr(make_node(Op::kLog, u.node_)); }
Expr Expr::sin(Expr u) { return Expr(make_node(Op::kSin, u.node_)); }
Expr Expr::cos(Expr u) { return Expr(make_node(Op::kCos, u.node_)); }
Expr Expr::sqrt(Expr u) { return Expr(make_node(Op::kSqrt, u.node_)); }

Expr Expr::pow(Expr base, long exponent) {
  if (exponent == 0) return number(1.0);
  if (exponent == 1) return base;
  auto n = std::make_shared<Node>();
  n->op = Op::kPowInt;
  n->exponent = exponent;
  n->lhs = base.node_;
  return Expr(std::move(n));
}

// Constant folding and identity elimination keep derivative trees small.
Expr operator+(Expr a, Expr b) {
  if (is_literal(a.node_, 0.0)) return b;
  if (is_literal(b.node_, 0.0)) return a;
  if (a.node_->op == Op::kNumber && b.node_->op == Op::kNumber)
    return Expr::number(a.node_->value + b.node_->value);
  return Expr(make_node(Op::kAdd, a.node_, b.node_));
}

Expr operator-(Expr a, Expr b) {
  if (is_literal(b.node_, 0.0)) return a;
  if (is_literal(a.node_, 0.0)) return Expr::neg(b);
  if (a.node_->op == Op::kNumber && b.node_->op == Op::kNumber)
    return Expr::number(a.node_->value - b.node_->value);
  return Expr(make_node(Op::kSub, a.node_, b.node_));
}

Expr operator*(Expr a, Expr b) {
  if (is_literal(a.node_, 0.0) || is_literal(b.node_, 0.0)) return Expr::number(0.0);
  if (is_literal(a.node_, 1.0)) return b;
  if (is_literal(b.node_, 1.0)) return a;
  if (a.node_->op == Op::kNumber && b.node_->op == Op::kNumber)
    return Expr::number(a.node_->value * b.node_->value);
  return Expr(make_node(Op::kMul, a.node_, b.node_));
}

Expr operator/(Expr a, Expr b) {
  if (is_literal(a.node_, 0.0) && !is_literal(b.node_, 0.0)) return Expr::number(0.0);
  if (is_literal(b.node_, 1.0)) return a;
  return Expr(make_node(Op::kDiv, a.node_, b.node_));
}

Complex Expr::eval(Complex z) const { return eval_node(*node_, z); }

bool Expr::is_zero_literal() const { return is_literal(node_, 0.0); }

Expr Expr::derivative() const {
  const Node& n = *node_;
  Expr u = n.lhs ? Expr(n.lhs) : Expr();
  Expr v = n.rhs ? Expr(n.rhs) : Expr();
  switch (n.op) {
    case Op::kNumber:
      return number(0.0);
    case Op::kVariable:
      return number(1.0);
    case Op::kNeg:
      return neg(u.derivative());
    case Op::kExp:
      return exp(u) * u.derivative();
    case Op::kLog:
      return u.derivative() / u;
    case Op::kSin:
      return cos(u) * u.derivative();
    case Op::kCos:
      return neg(sin(u)) * u.derivative();
    case Op::kSqrt:
      return u.derivative() / (number(2.0) * sqrt(u));
    case Op::kAdd:
      return u.derivative() + v.derivative();
    case Op::kSub:
      return u.derivative() - v.derivative();
    case Op::kMul:
      return u.derivative() * v + u * v.derivative();
    case Op::kDiv:
      return (u.derivative() * v - u * v.derivative()) / (v * v);
    case Op::kPowInt:
      return number(static_cast<double>(n.exponent)) * pow(u, n.exponent - 1) *
             u.derivative();
  }
  throw NumericError("corrupt expression node");
}

std::string Expr::str() const {
  std::string out;
  print_node(out, *node_);
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (consume('+')) {
        e = e + parse_term();
      } else if (consume('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (consume('*')) {
        e = e * parse_factor();
      } else if (consume('/')) {
        e = e / parse_factor();
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    if (consume('^')) {
      skip_space();
      std::size_t start = pos_;
      bool negated = pos_ < text_.size() && text_[pos_] == '-';
      if (negated) ++pos_;
      std::size_t digits = 0;
      long value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + (text_[pos_] - '0');
        ++pos_;
        ++digits;
      }
      if (digits == 0) throw ParseError("expected integer exponent", start);
      return Expr::pow(base, negated ? -value : value);
    }
    return base;
  }

  Expr parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ - start == 0 || (pos_ - start == 1 && text_[start] == '.'))
      throw ParseError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        pos_ = mark;  // 'e' was not an exponent part
      } else {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr);
    return Expr::number(value);
  }

  Expr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "i") return Expr::number(Complex(0.0, 1.0));
    if (name == "lambda") return Expr::variable();
    Expr (*fn)(Expr) = nullptr;
    if (name == "exp") fn = &Expr::exp;
    else if (name == "log") fn = &Expr::log;
    else if (name == "sin") fn = &Expr::sin;
    else if (name == "cos") fn = &Expr::cos;
    else if (name == "sqrt") fn = &Expr::sqrt;
    else if (name == "neg") fn = &Expr::neg;
    if (!fn) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    if (!consume('(')) throw ParseError("expected '(' after function name", pos_);
    Expr arg = parse_expr();
    if (!consume(')')) throw ParseError("expected ')'", pos_);
    return fn(arg);
  }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace gsk
