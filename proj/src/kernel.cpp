#include "gsk/kernel.hpp"

#include <cmath>

namespace gsk {

namespace {

// sinh(z)/z by the entire series for small |z|.
Complex sinhc(Complex z) {
  if (std::abs(z) > 1e-3) return std::sinh(z) / z;
  Complex z2 = z * z;
  return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0));
}

// V / gamma; the reduced kernel the Nystrom matrix is built from.
Complex reduced_kernel(const ModelSpec& m, double x, Complex lambda, Complex mu) {
  if (lambda == mu) {
    return m.F().eval(lambda) *
           (x * m.dp().eval(lambda) - kI * m.dg().eval(lambda)) / (2.0 * kPi);
  }
  Complex s = std::sqrt(m.F().eval(lambda) * m.F().eval(mu));
  Complex diff = lambda - mu;
  Complex delta = kI * x * (m.p().eval(lambda) - m.p().eval(mu)) * 0.5 +
                  (m.g().eval(lambda) - m.g().eval(mu)) * 0.5;
  if (std::abs(diff) < 1e-6) {
    // e(l)/e(m) - e(m)/e(l) = 2 sinh(delta); evaluate sinh(delta)/(l-m)
    // as (delta/(l-m)) * sinhc(delta) to control cancellation.
    return s * (delta / diff) * sinhc(delta) / (kI * kPi);
  }
  Complex ratio = std::exp(delta);
  return s * (ratio - 1.0 / ratio) / (2.0 * kI * kPi * diff);
}

}  // namespace

Complex kernel_value(const ModelSpec& model, double x, Complex lambda, Complex mu) {
  return model.gamma() * reduced_kernel(model, x, lambda, mu);
}

NystromSystem assemble(const ModelSpec& model, double x, int order) {
  NystromSystem sys;
  sys.x = x;
  sys.rule = gauss_legendre(order > 0 ? order : model.quad_order(), -model.q(), model.q());
  model.validate_on(sys.rule);

  const int n = static_cast<int>(sys.rule.nodes.size());
  // Expression trees are walked once per node, not once per entry.
  std::vector<double> sqw(n);
  std::vector<Complex> pv(n), gv(n), fv(n), diag(n);
  for (int i = 0; i < n; ++i) {
    Complex li(sys.rule.nodes[i], 0.0);
    sqw[i] = std::sqrt(sys.rule.weights[i]);
    pv[i] = model.p().eval(li);
    gv[i] = model.g().eval(li);
    fv[i] = model.F().eval(li);
    diag[i] = fv[i] * (x * model.dp().eval(li) - kI * model.dg().eval(li)) / (2.0 * kPi);
  }

  sys.K.resize(n, n);
  for (int i = 0; i < n; ++i) {
    sys.K(i, i) = sys.rule.weights[i] * diag[i];
    for (int j = 0; j < i; ++j) {
      Complex s = std::sqrt(fv[i] * fv[j]);
      Complex diff = sys.rule.nodes[i] - sys.rule.nodes[j];
      Complex delta = kI * x * (pv[i] - pv[j]) * 0.5 + (gv[i] - gv[j]) * 0.5;
      Complex v;
      if (std::abs(diff) < 1e-6) {
        v = s * (delta / diff) * sinhc(delta) / (kI * kPi);
      } else {
        Complex ratio = std::exp(delta);
        v = s * (ratio - 1.0 / ratio) / (2.0 * kI * kPi * diff);
      }
      v *= sqw[i] * sqw[j];
      sys.K(i, j) = v;
      sys.K(j, i) = v;  // the kernel is symmetric under lambda <-> mu
    }
  }
  return sys;
}

Complex log_fredholm_det(const NystromSystem& system, Complex gamma) {
  if (gamma == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
  auto eig = eigenvalues(system.K);
  double radius = 0.0;
  for (const auto& mu : eig) radius = std::max(radius, std::abs(gamma * mu));
  if (radius >= 1.0)
    throw NumericError("log_fredholm_det: spectral radius of gamma K is " +
                       std::to_string(radius) + " >= 1; reduce |gamma|");
  Complex acc(0.0, 0.0);
  for (const auto& mu : eig) acc += std::log(1.0 + gamma * mu);
  return acc;
}

Complex trace_power(const NystromSystem& system, int n, int cap) {
  if (n < 1) throw NumericError("trace_power: n must be >= 1");
  if (n > cap)
    throw NumericError("trace_power: n = " + std::to_string(n) + " above the cap " +
                       std::to_string(cap));
  const Matrix& k = system.K;
  switch (n) {
    case 1:
      return k.trace();
    case 2:
      return (k.transpose().cwiseProduct(k)).sum();
    default: {
      Matrix k2 = k * k;
      if (n == 3) return (k2.transpose().cwiseProduct(k)).sum();
      if (n == 4) return (k2.transpose().cwiseProduct(k2)).sum();
      Matrix k3 = k2 * k;
      if (n == 5) return (k2.transpose().cwiseProduct(k3)).sum();
      if (n == 6) return (k3.transpose().cwiseProduct(k3)).sum();
      Matrix acc = k3;  // n > 6 only with a raised cap
      for (int j = 4; j <= n; ++j) acc = acc * k;
      return acc.trace();
    }
  }
}

Jet log_fredholm_det_jet(const NystromSystem& system, int order) {
  auto eig = eigenvalues(system.K);
  Jet acc(order);
  for (const auto& mu : eig) acc = acc + Jet::log1p_scaled(mu, order);
  return acc;
}

namespace {

Complex log_kappa_impl(const std::function<Complex(Complex)>& nu,
                       const std::function<Complex(Complex)>& nu_prime, double q,
                       int order, Complex lambda) {
  QuadratureRule rule = gauss_legendre(order, -q, q);
  Complex nl = nu(lambda);
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    Complex mu(rule.nodes[i], 0.0);
    Complex term;
    if (std::abs(lambda - mu) < 1e-8) {
      term = nu_prime(mu);
    } else {
      term = (nl - nu(mu)) / (lambda - mu);
    }
    acc += rule.weights[i] * term;
  }
  return acc;
}

}  // namespace

Complex log_kappa(const ModelSpec& model, Complex lambda) {
  return log_kappa_impl([&](Complex z) { return model.nu(z); },
                        [&](Complex z) { return model.nu_prime(z); }, model.q(),
                        model.quad_order(), lambda);
}

Complex kappa(const ModelSpec& model, Complex lambda) {
  return std::exp(log_kappa(model, lambda));
}

Complex kappa_synthetic(const std::function<Complex(Complex)>& nu,
                        const std::function<Complex(Complex)>& nu_prime,
                        double q, int order, Complex lambda) {
  return std::exp(log_kappa_impl(nu, nu_prime, q, order, lambda));
}

std::pair<Complex, int> log_fredholm_det_converged(const ModelSpec& model, double x,
                                                   double tol, int cap) {
  int order = model.quad_order();
  Complex prev = log_fredholm_det(assemble(model, x, order), model.gamma());
  while (2 * order <= cap) {
    int next_order = 2 * order;
    Complex next = log_fredholm_det(assemble(model, x, next_order), model.gamma());
    if (std::abs(next - prev) <= tol * std::max(1.0, std::abs(next)))
      return {next, next_order};
    prev = next;
    order = next_order;
  }
  throw NumericError("log_fredholm_det_converged: no convergence up to order " +
                     std::to_string(cap));
}

}  // namespace gsk
