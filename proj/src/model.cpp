#include "gsk/model.hpp"

#include <cmath>

namespace gsk {

ModelSpec::ModelSpec(double q, Complex gamma, Expr p, Expr F, Expr g)
    : q_(q),
      gamma_(gamma),
      p_(std::move(p)),
      F_(std::move(F)),
      g_(std::move(g)),
      dp_(p_.derivative()),
      dF_(F_.derivative()),
      dg_(g_.derivative()),
      contour_{q / 2.0, 64} {
  if (!(q > 0.0)) throw ModelError("model: q must be positive");
}

ModelSpec ModelSpec::with_phi(double q, Complex gamma, Expr p, Expr phi, Expr g) {
  Expr F = phi * Expr::exp(g);
  ModelSpec m(q, gamma, std::move(p), std::move(F), std::move(g));
  m.phi_ = std::move(phi);
  return m;
}

Complex ModelSpec::nu(Complex z) const {
  Complex gf = gamma_ * F_.eval(z);
  if (std::abs(gf) >= 1.0)
    throw NumericError("nu: |gamma F| >= 1, outside the small-coupling regime");
  Complex arg = 1.0 + gf;
  if (arg.imag() == 0.0 && arg.real() <= 0.0)
    throw NumericError("nu: branch violation, 1 + gamma F on the negative real axis");
  return kI / (2.0 * kPi) * std::log(arg);
}

Complex ModelSpec::nu_prime(Complex z) const {
  Complex gf = gamma_ * F_.eval(z);
  return kI / (2.0 * kPi) * (gamma_ * dF_.eval(z)) / (1.0 + gf);
}

void ModelSpec::validate_on(const QuadratureRule& rule) const {
  double sup = 0.0;
  std::vector<Complex> pv(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    Complex z(rule.nodes[i], 0.0);
    sup = std::max(sup, std::abs(gamma_ * F_.eval(z)));
    pv[i] = p_.eval(z);
  }
  if (sup >= 1.0)
    throw ModelError("model: sup |gamma F| = " + std::to_string(sup) +
                     " >= 1 on the segment nodes");
  double scale = 0.0;
  for (const auto& v : pv) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t i = 0; i < pv.size(); ++i)
    for (std::size_t j = i + 1; j < pv.size(); ++j)
      if (std::abs(pv[i] - pv[j]) <= 1e-12 * scale)
        throw ModelError("model: p not injective on the sampled segment nodes");
}

ModelSpec ModelSpec::with_gamma(Complex gamma) const {
  ModelSpec m = *this;
  m.gamma_ = gamma;
  return m;
}

ModelSpec ModelSpec::with_scaled_g(double scale) const {
  // F stays fixed; only the g entering e(.) is scaled.  A declared phi no
  // longer satisfies F = phi exp(g) after scaling, so it is dropped.
  Expr g2 = Expr::number(scale) * g_;
  ModelSpec m(q_, gamma_, p_, F_, g2);
  m.quad_order_ = quad_order_;
  m.contour_ = contour_;
  m.conv_ = conv_;
  m.xdep_ = xdep_;
  return m;
}

ModelSpec ModelSpec::reparameterized(double x) const {
  Expr p2 = p_ - Expr::number(kI / x) * g_;
  ModelSpec m(q_, gamma_, p2, F_, Expr::number(0.0));
  m.quad_order_ = quad_order_;
  m.contour_ = contour_;
  m.conv_ = conv_;
  m.xdep_ = xdep_;
  return m;
}

}  // namespace gsk
