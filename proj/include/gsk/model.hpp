#pragma once

#include <optional>
#include <string>

#include "gsk/expr.hpp"
#include "gsk/quadrature.hpp"

namespace gsk {

/// Which of the two printed variants of a formula to evaluate where the
/// source formulas disagree between themselves.
struct Conventions {
  /// Non-oscillating corollary/proposition factor: d^n/dg^n of nu0^2
  /// (default) versus nu0.
  bool nu0_squared = true;
  enum class IndexConvention { kAsPrinted, kShifted };
  /// Oscillating k-sum: weights (..)^k (..)^{N-k}, k <= N (as printed) or
  /// (..)^k (..)^{N-2-k}, k <= N-2 (shifted).
  IndexConvention index_convention = IndexConvention::kAsPrinted;
};

struct ContourParams {
  double delta = 0.5;
  int nodes_per_side = 64;
};

/// Parameters of an x-dependent symmetric-function family (see xdep.hpp);
/// stored with the model so that model files can carry one.
struct XDepParams {
  Expr a;  // additive exponent generator of G_n
  Expr b;  // additive exponent generator of H_n
  Expr v;  // one-variable generator of V_n
  double c = 0.0;  // pair-weight strength in omega(u,u') = 1 + c (u-u')^2
};

/// The model triple (p, F, g) on [-q, q] with coupling gamma, together
/// with discretization settings.  The frequency parameter x is passed per
/// operation, never stored.
class ModelSpec {
 public:
  ModelSpec(double q, Complex gamma, Expr p, Expr F, Expr g);

  /// Build with F = phi * exp(g) declared as a product, keeping phi
  /// available for the cyclic-integral link.
  static ModelSpec with_phi(double q, Complex gamma, Expr p, Expr phi, Expr g);

  double q() const { return q_; }
  Complex gamma() const { return gamma_; }
  const Expr& p() const { return p_; }
  const Expr& F() const { return F_; }
  const Expr& g() const { return g_; }
  const Expr& dp() const { return dp_; }
  const Expr& dF() const { return dF_; }
  const Expr& dg() const { return dg_; }
  const std::optional<Expr>& phi() const { return phi_; }
  bool f_is_phi_exp_g() const { return phi_.has_value(); }

  int quad_order() const { return quad_order_; }
  void set_quad_order(int order) { quad_order_ = order; }
  const ContourParams& contour() const { return contour_; }
  void set_contour(const ContourParams& c) { contour_ = c; }
  const Conventions& conventions() const { return conv_; }
  void set_conventions(const Conventions& c) { conv_ = c; }
  const std::optional<XDepParams>& xdep() const { return xdep_; }
  void set_xdep(XDepParams x) { xdep_ = std::move(x); }

  /// nu(z) = (i/2pi) log(1 + gamma F(z)), principal branch.  Throws
  /// NumericError when |gamma F| >= 1 or 1 + gamma F falls on the closed
  /// negative real axis.
  Complex nu(Complex z) const;
  /// nu'(z) = (i/2pi) gamma F'(z) / (1 + gamma F(z)).
  Complex nu_prime(Complex z) const;

  // Boundary values H(+q), H(-q) used throughout the expansion formulas.
  Complex p_plus() const { return p_.eval(q_); }
  Complex p_minus() const { return p_.eval(-q_); }
  Complex dp_plus() const { return dp_.eval(q_); }
  Complex dp_minus() const { return dp_.eval(-q_); }
  Complex F_plus() const { return F_.eval(q_); }
  Complex F_minus() const { return F_.eval(-q_); }
  Complex g_plus() const { return g_.eval(q_); }
  Complex g_minus() const { return g_.eval(-q_); }
  Complex dg_plus() const { return dg_.eval(q_); }
  Complex dg_minus() const { return dg_.eval(-q_); }
  Complex nu_plus() const { return nu(q_); }
  Complex nu_minus() const { return nu(-q_); }

  /// The segment quadrature rule at the model's order.
  QuadratureRule segment_rule() const { return gauss_legendre(quad_order_, -q_, q_); }

  /// sup |gamma F| < 1 over the given nodes and p injective on them;
  /// throws ModelError otherwise.
  void validate_on(const QuadratureRule& rule) const;

  /// Copy with a different coupling.
  ModelSpec with_gamma(Complex gamma) const;
  /// Copy with g replaced by scale * g (used for the g-term derivative).
  ModelSpec with_scaled_g(double scale) const;
  /// Copy with p replaced by p - i g / x and g set to 0; F unchanged.
  /// The two parameterizations describe the same kernel.
  ModelSpec reparameterized(double x) const;

 private:
  double q_;
  Complex gamma_;
  Expr p_, F_, g_;
  Expr dp_, dF_, dg_;
  std::optional<Expr> phi_;
  int quad_order_ = 128;
  ContourParams contour_;
  Conventions conv_;
  std::optional<XDepParams> xdep_;
};

}  // namespace gsk
