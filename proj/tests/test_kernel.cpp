#include "doctest.h"

#include <cmath>
#include <random>

#include "gsk/kernel.hpp"
#include "gsk/verify.hpp"

using gsk::Complex;
using gsk::kPi;
using gsk::ModelSpec;

TEST_CASE("nu values and branch guards") {
  ModelSpec flat(1.0, Complex(0.1, 0.0), gsk::parse_expr("lambda"), gsk::parse_expr("1"),
                 gsk::Expr::number(0.0));
  // F == 1, gamma = 0.1: nu = (i/2pi) ln(1.1).
  Complex expect = gsk::kI / (2.0 * kPi) * std::log(Complex(1.1, 0.0));
  CHECK(std::abs(flat.nu(Complex(0.3, 0)) - expect) < 1e-15);
  CHECK(std::abs(expect.imag() - 0.0151690862) < 1e-9);  // ln(1.1)/(2 pi)

  ModelSpec zero = flat.with_gamma(Complex(0, 0));
  CHECK(std::abs(zero.nu(Complex(0.2, 0))) == 0.0);

  ModelSpec big = flat.with_gamma(Complex(2, 0));
  CHECK_THROWS_AS(big.nu(Complex(0, 0)), gsk::NumericError);
}

TEST_CASE("kernel values: zero coupling, symmetry, diagonal limit") {
  ModelSpec zero(1.0, Complex(0, 0), gsk::parse_expr("lambda"),
                 gsk::parse_expr("1 + 0.2*lambda^2"), gsk::parse_expr("0.3*sin(lambda)"));
  CHECK(std::abs(gsk::kernel_value(zero, 10.0, Complex(0.3, 0), Complex(-0.4, 0))) == 0.0);

  ModelSpec smoke = gsk::smoke_model();
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 10; ++t) {
    Complex l(u(rng), 0), m(u(rng), 0);
    Complex a = gsk::kernel_value(smoke, 12.0, l, m);
    Complex b = gsk::kernel_value(smoke, 12.0, m, l);
    CHECK(std::abs(a - b) <= 1e-15);  // pointwise symmetric to rounding
  }

  // Diagonal limit at p = l, F = 1, g = 0, x = 10: gamma * 10 / (2 pi).
  ModelSpec sine(1.0, Complex(0.2, 0), gsk::parse_expr("lambda"), gsk::parse_expr("1"),
                 gsk::Expr::number(0.0));
  Complex diag = gsk::kernel_value(sine, 10.0, Complex(0.2, 0), Complex(0.2, 0));
  CHECK(std::abs(diag - Complex(0.2 * 10.0 / (2.0 * kPi), 0)) < 1e-15);

  // Near-diagonal series path joins the direct formula smoothly.
  Complex near = gsk::kernel_value(smoke, 10.0, Complex(0.2, 0), Complex(0.2 + 5e-7, 0));
  Complex far = gsk::kernel_value(smoke, 10.0, Complex(0.2, 0), Complex(0.2 + 2e-6, 0));
  Complex at = gsk::kernel_value(smoke, 10.0, Complex(0.2, 0), Complex(0.2, 0));
  CHECK(std::abs(near - at) < 1e-4 * std::abs(at));
  CHECK(std::abs(far - at) < 1e-4 * std::abs(at));
}

TEST_CASE("assembly: symmetric matrix, invariant checks") {
  ModelSpec smoke = gsk::smoke_model();
  auto sys = gsk::assemble(smoke, 20.0, 64);
  CHECK((sys.K - sys.K.transpose()).cwiseAbs().maxCoeff() == 0.0);

  ModelSpec bad = smoke.with_gamma(Complex(0.9, 0));  // sup|gamma F| = 1.08
  CHECK_THROWS_AS(gsk::assemble(bad, 20.0, 64), gsk::ModelError);

  ModelSpec noninjective(1.0, Complex(0.1, 0), gsk::parse_expr("lambda^2"),
                         gsk::parse_expr("1"), gsk::Expr::number(0.0));
  CHECK_THROWS_AS(gsk::assemble(noninjective, 20.0, 64), gsk::ModelError);
}

TEST_CASE("reparameterization: identical matrices and determinants") {
  double worst_entry = 0.0, worst_det = 0.0;
  for (unsigned seed = 1; seed <= 10; ++seed) {
    ModelSpec m = gsk::random_tame_model(seed);
    for (double x : {5.0, 20.0}) {
      auto s1 = gsk::assemble(m, x, 96);
      auto s2 = gsk::assemble(m.reparameterized(x), x, 96);
      worst_entry = std::max(worst_entry, (s1.K - s2.K).cwiseAbs().maxCoeff());
      Complex d1 = gsk::log_fredholm_det(s1, m.gamma());
      Complex d2 = gsk::log_fredholm_det(s2, m.gamma());
      worst_det = std::max(worst_det, std::abs(d1 - d2));
    }
  }
  CHECK(worst_entry <= 1e-13);
  CHECK(worst_det <= 1e-12);
}

TEST_CASE("log determinant: zero coupling, trace series, spectral guard") {
  ModelSpec smoke = gsk::smoke_model();
  auto sys = gsk::assemble(smoke, 20.0);
  CHECK(gsk::log_fredholm_det(sys, Complex(0, 0)) == Complex(0, 0));

  // Slope-3 check: E(gamma) = |lndet - gamma t1 + gamma^2 t2 / 2| = O(gamma^3).
  Complex t1 = gsk::trace_power(sys, 1), t2 = gsk::trace_power(sys, 2);
  auto err = [&](double g) {
    Complex ld = gsk::log_fredholm_det(sys, Complex(g, 0));
    return std::abs(ld - g * t1 + 0.5 * g * g * t2);
  };
  double ratio = err(1e-2) / err(5e-3);
  CHECK(ratio > 7.0);
  CHECK(ratio < 9.0);

  CHECK_THROWS_AS(gsk::log_fredholm_det(sys, Complex(2.0, 0)), gsk::NumericError);
}

TEST_CASE("trace powers: closed form, gamma independence, jet oracle") {
  ModelSpec sine(1.0, Complex(0.1, 0), gsk::parse_expr("lambda"), gsk::parse_expr("1"),
                 gsk::Expr::number(0.0));
  auto sys = gsk::assemble(sine, 10.0);
  // tr K = x (p_+ - p_-) / (2 pi) = 20 / (2 pi).
  CHECK(std::abs(gsk::trace_power(sys, 1) - Complex(20.0 / (2.0 * kPi), 0)) < 1e-10);

  auto sys2 = gsk::assemble(sine.with_gamma(Complex(0.3, 0)), 10.0);
  CHECK(std::abs(gsk::trace_power(sys, 2) - gsk::trace_power(sys2, 2)) == 0.0);

  // J_n from the per-eigenvalue log1p jet equals tr K^n.
  gsk::Jet jet = gsk::log_fredholm_det_jet(sys, 4);
  for (int n = 1; n <= 3; ++n) {
    double sign = (n % 2 == 1) ? 1.0 : -1.0;
    double fact = 1.0;
    for (int j = 2; j < n; ++j) fact *= j;
    Complex jn = sign / fact * jet.derivative_at_zero(n);
    Complex tn = gsk::trace_power(sys, n);
    CHECK(std::abs(jn - tn) <= 1e-8 * std::abs(tn));
  }

  CHECK_THROWS_AS(gsk::trace_power(sys, 7), gsk::NumericError);
  // Raised cap: tr K^7 equals the eigenvalue power sum.
  Complex t7 = gsk::trace_power(sys, 7, /*cap=*/8);
  auto eig = gsk::eigenvalues(sys.K);
  Complex psum(0, 0);
  for (auto mu : eig) {
    Complex p(1, 0);
    for (int j = 0; j < 7; ++j) p *= mu;
    psum += p;
  }
  CHECK(std::abs(t7 - psum) <= 1e-10 * std::max(1.0, std::abs(t7)));
}

TEST_CASE("kappa: constants, synthetic linear mode, removable point") {
  // Constant nu (F constant): the integrand vanishes identically.
  ModelSpec flat(1.0, Complex(0.2, 0), gsk::parse_expr("lambda"), gsk::parse_expr("1"),
                 gsk::Expr::number(0.0));
  CHECK(gsk::kappa(flat, Complex(1.0, 0)) == Complex(1.0, 0.0));
  CHECK(gsk::kappa(flat.with_gamma(Complex(0, 0)), Complex(-1.0, 0)) == Complex(1.0, 0.0));

  // Synthetic nu(l) = c l: ln kappa = 2 q c exactly.
  const Complex c(0.37, -0.21);
  auto nu = [c](Complex z) { return c * z; };
  auto dnu = [c](Complex) { return c; };
  for (Complex lam : {Complex(1.0, 0.0), Complex(-1.0, 0.0), Complex(0.3, 0.4)}) {
    Complex K = gsk::kappa_synthetic(nu, dnu, 1.0, 64, lam);
    CHECK(std::abs(K - std::exp(2.0 * c)) <= 1e-10 * std::abs(std::exp(2.0 * c)));
  }

  // Evaluation exactly on a quadrature node exercises the removable path.
  auto rule = gsk::gauss_legendre(64, -1.0, 1.0);
  Complex on_node(rule.nodes[10], 0.0);
  Complex K = gsk::kappa_synthetic(nu, dnu, 1.0, 64, on_node);
  CHECK(std::abs(K - std::exp(2.0 * c)) <= 1e-10 * std::abs(std::exp(2.0 * c)));
}

TEST_CASE("order escalation converges and reports the order used") {
  ModelSpec smoke = gsk::smoke_model();
  smoke.set_quad_order(32);
  auto [value, order] = gsk::log_fredholm_det_converged(smoke, 20.0);
  CHECK(order >= 64);
  auto direct = gsk::log_fredholm_det(gsk::assemble(smoke, 20.0, 512), smoke.gamma());
  CHECK(std::abs(value - direct) < 1e-9);
}
