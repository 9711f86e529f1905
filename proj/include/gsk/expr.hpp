#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "gsk/common.hpp"

namespace gsk {

/// Immutable expression tree for an analytic function of one complex
/// variable `lambda`.  Nodes: complex literals, the variable, the unary
/// functions {neg, exp, log, sin, cos, sqrt}, the binary operators
/// {+, -, *, /} and `^` with a constant integer exponent.
///
/// log and sqrt take the principal branch; log raises a NumericError when
/// its argument lies on the closed negative real axis, so that every value
/// an Expr produces is an unambiguous limit of the analytic continuation.
///
/// Expressions are shared, immutable trees: copying is cheap and every
/// operation is safe for concurrent use.
class Expr {
 public:
  Expr();  // literal 0

  static Expr number(Complex value);
  static Expr number(double value) { return number(Complex(value, 0.0)); }
  static Expr variable();  // lambda

  static Expr neg(Expr u);
  static Expr exp(Expr u);
  static Expr log(Expr u);
  static Expr sin(Expr u);
  static Expr cos(Expr u);
  static Expr sqrt(Expr u);
  static Expr pow(Expr base, long exponent);

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);

  Complex eval(Complex z) const;

  /// Symbolic derivative with respect to lambda.
  Expr derivative() const;

  /// Parseable rendering; eval(parse(str()), z) == eval(*this, z).
  std::string str() const;

  /// True when the node is the literal 0 (structural test, not symbolic).
  bool is_zero_literal() const;

  struct Node;  // implementation detail, public only for the .cpp helpers

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parse expression text.  Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' int)?
///   atom   := number | 'i' | 'lambda' | func '(' expr ')' | '(' expr ')'
///   func   := exp | log | sin | cos | sqrt | neg
/// Numbers are unsigned decimals with an optional exponent part.
/// Throws ParseError with the byte offset on malformed input and on
/// unknown identifiers.
Expr parse_expr(std::string_view text);

}  // namespace gsk
