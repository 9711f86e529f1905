#pragma once

#include <vector>

#include "gsk/common.hpp"

namespace gsk {

/// Truncated Taylor series c_0 + c_1 g + ... + c_K g^K of a function of the
/// coupling g about g = 0.  Used to extract high-order derivatives at 0,
/// where repeated numerical differentiation is unstable.  All operations
/// truncate at the smaller of the operand orders.
class Jet {
 public:
  explicit Jet(int order) : c_(order + 1, Complex(0.0, 0.0)) {}

  static Jet constant(Complex v, int order);
  /// v0 + g (the jet of the expansion variable itself).
  static Jet variable(Complex v0, int order);
  /// Jet of log(1 + s*g): c_n = (-1)^{n+1} s^n / n, c_0 = 0.
  static Jet log1p_scaled(Complex s, int order);
  /// Jet of (i/2pi) log(1 + s*g), the spectral exponent of a coupling of
  /// strength s.
  static Jet nu0(Complex s, int order);
  /// Jet of a polynomial sum_k coeffs[k] g^k truncated at `order`.
  static Jet polynomial(const std::vector<Complex>& coeffs, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Complex coeff(int k) const { return k <= order() ? c_[k] : Complex(0.0, 0.0); }
  Complex& coeff_ref(int k) { return c_[k]; }
  /// d^n/dg^n at g=0, i.e. n! c_n.
  Complex derivative_at_zero(int n) const;

  Jet operator-() const;
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator*(Complex s, const Jet& a);
  friend Jet operator+(Complex s, const Jet& a);
  friend Jet operator*(double s, const Jet& a) { return Complex(s, 0.0) * a; }
  friend Jet operator+(double s, const Jet& a) { return Complex(s, 0.0) + a; }

  /// exp of a jet (any constant term).
  static Jet exp(const Jet& u);
  /// log(1 + u) for a jet with zero constant term.
  static Jet log1p(const Jet& u);
  /// Integer power by repeated multiplication.
  static Jet pow_int(const Jet& u, int n);
  /// sum_k series[k] u^k for a jet u with zero constant term (composition
  /// with an analytic function given by its Taylor coefficients at u0 = 0).
  static Jet compose(const std::vector<Complex>& series, const Jet& u);

 private:
  std::vector<Complex> c_;
};

/// Jet of ln Gamma(1 + w) for a jet w with zero constant term, built from
/// polygamma values at 1.
Jet lngamma_one_plus(const Jet& w);

/// Jet of the entire function 1/Gamma(w) for a jet w with zero constant
/// term: w * exp(-ln Gamma(1 + w)).
Jet rgamma_jet(const Jet& w);

}  // namespace gsk
