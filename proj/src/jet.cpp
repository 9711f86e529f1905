#include "gsk/jet.hpp"

#include <algorithm>
#include <cmath>

#include "gsk/special.hpp"

namespace gsk {

Jet Jet::constant(Complex v, int order) {
  Jet j(order);
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(Complex v0, int order) {
  Jet j(order);
  j.c_[0] = v0;
  if (order >= 1) j.c_[1] = Complex(1.0, 0.0);
  return j;
}

Jet Jet::log1p_scaled(Complex s, int order) {
  Jet j(order);
  Complex sp = s;
  for (int n = 1; n <= order; ++n) {
    j.c_[n] = ((n % 2 == 1) ? 1.0 : -1.0) * sp / static_cast<double>(n);
    sp *= s;
  }
  return j;
}

Jet Jet::nu0(Complex s, int order) {
  Jet j = log1p_scaled(s, order);
  const Complex f = kI / (2.0 * kPi);
  for (int n = 0; n <= order; ++n) j.c_[n] *= f;
  return j;
}

Jet Jet::polynomial(const std::vector<Complex>& coeffs, int order) {
  Jet j(order);
  for (int n = 0; n <= order && n < static_cast<int>(coeffs.size()); ++n) j.c_[n] = coeffs[n];
  return j;
}

Complex Jet::derivative_at_zero(int n) const {
  if (n > order()) throw NumericError("jet order too small for requested derivative");
  double fact = 1.0;
  for (int j = 2; j <= n; ++j) fact *= j;
  return fact * c_[n];
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
    r.c_[k] = acc;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b.c_[0] == Complex(0.0, 0.0))
    throw NumericError("jet division by a jet with zero constant term");
  Jet r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) {
    Complex acc = a.c_[k];
    for (int j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
    r.c_[k] = acc / b.c_[0];
  }
  return r;
}

Jet operator*(Complex s, const Jet& a) {
  Jet r = a;
  for (auto& v : r.c_) v *= s;
  return r;
}

Jet operator+(Complex s, const Jet& a) {
  Jet r = a;
  r.c_[0] += s;
  return r;
}

Jet Jet::exp(const Jet& u) {
  // e_n = (1/n) sum_{k=1..n} k u_k e_{n-k}, e_0 = exp(u_0).
  Jet r(u.order());
  r.c_[0] = std::exp(u.c_[0]);
  for (int n = 1; n <= u.order(); ++n) {
    Complex acc(0.0, 0.0);
    for (int k = 1; k <= n; ++k) acc += static_cast<double>(k) * u.c_[k] * r.c_[n - k];
    r.c_[n] = acc / static_cast<double>(n);
  }
  return r;
}

Jet Jet::log1p(const Jet& u) {
  if (u.c_[0] != Complex(0.0, 0.0))
    throw NumericError("jet log1p requires a zero constant term");
  // l' (1+u) = u'  =>  l_n = u_n - (1/n) sum_{k=1..n-1} k l_k u_{n-k}.
  Jet r(u.order());
  for (int n = 1; n <= u.order(); ++n) {
    Complex acc = static_cast<double>(n) * u.c_[n];
    for (int k = 1; k < n; ++k) acc -= static_cast<double>(k) * r.c_[k] * u.c_[n - k];
    r.c_[n] = acc / static_cast<double>(n);
  }
  return r;
}

Jet Jet::pow_int(const Jet& u, int n) {
  if (n < 0) {
    Jet unit = Jet::constant(Complex(1.0, 0.0), u.order());
    return pow_int(unit / u, -n);
  }
  Jet acc = Jet::constant(Complex(1.0, 0.0), u.order());
  Jet base = u;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

Jet Jet::compose(const std::vector<Complex>& series, const Jet& u) {
  if (u.c_[0] != Complex(0.0, 0.0))
    throw NumericError("jet compose requires a zero constant term");
  // Horner in jet arithmetic.
  Jet r = Jet::constant(Complex(0.0, 0.0), u.order());
  for (int k = static_cast<int>(series.size()) - 1; k >= 0; --k) {
    r = r * u;
    r.c_[0] += series[k];
  }
  return r;
}

Jet lngamma_one_plus(const Jet& w) {
  // ln Gamma(1+w) = sum_{k>=1} psi^{(k-1)}(1) w^k / k!
  std::vector<Complex> series(w.order() + 1, Complex(0.0, 0.0));
  double fact = 1.0;
  for (int k = 1; k <= w.order(); ++k) {
    fact *= k;
    series[k] = polygamma(k - 1, Complex(1.0, 0.0)) / fact;
  }
  return Jet::compose(series, w);
}

Jet rgamma_jet(const Jet& w) {
  return w * Jet::exp(-lngamma_one_plus(w));
}

}  // namespace gsk
