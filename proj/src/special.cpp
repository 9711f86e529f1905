#include "gsk/special.hpp"

#include <cmath>
#include <vector>

namespace gsk {

namespace {

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(Complex z) {
  if (z.imag() != 0.0) return false;
  double r = z.real();
  return r <= 0.0 && r == std::floor(r);
}

Complex gamma_lanczos(Complex z) {
  // Valid for Re z >= 0.5.
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int k = 1; k < 15; ++k) x += kLanczos[k] / (z + static_cast<double>(k));
  Complex t = z + (kLanczosG + 0.5);
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

Complex complex_gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw NumericError("gamma pole at non-positive integer argument");
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return kPi / (std::sin(kPi * z) * gamma_lanczos(1.0 - z));
  }
  return gamma_lanczos(z);
}

Complex rgamma(Complex z) {
  // Shift into the Lanczos region; each shift contributes a zero of 1/Gamma
  // at the corresponding pole of Gamma, so poles come out as exact zeros.
  Complex prefactor(1.0, 0.0);
  while (z.real() < 0.5) {
    prefactor *= z;
    z += 1.0;
  }
  return prefactor / gamma_lanczos(z);
}

Complex pochhammer(Complex a, int k) {
  if (k < 0) throw NumericError("pochhammer: negative index");
  Complex acc(1.0, 0.0);
  for (int j = 0; j < k; ++j) acc *= a + static_cast<double>(j);
  return acc;
}

Complex polygamma(int n, Complex z) {
  if (n < 0) throw NumericError("polygamma: order must be >= 0");
  if (is_nonpositive_integer(z)) throw NumericError("polygamma pole at non-positive integer");

  auto int_power = [](Complex w, int e) {
    Complex acc(1.0, 0.0);
    for (int j = 0; j < e; ++j) acc *= w;
    return acc;
  };

  double nfact = 1.0;
  for (int j = 2; j <= n; ++j) nfact *= j;
  const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;

  // psi^(n)(z) = psi^(n)(z+m) - sum_{j<m} (-1)^n n! (z+j)^{-n-1}
  Complex shift(0.0, 0.0);
  while (z.real() < 18.0) {
    shift -= sign_n * nfact / int_power(z, n + 1);
    z += 1.0;
  }

  // Asymptotic series with Bernoulli numbers B_2..B_14.
  static const double kBernoulli[] = {1.0 / 6.0,  -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
                                      5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
  Complex value;
  const Complex z2 = z * z;
  if (n == 0) {
    value = std::log(z) - 0.5 / z;
    Complex zp = z2;
    for (int k = 1; k <= 7; ++k) {
      value -= kBernoulli[k - 1] / (2.0 * k * zp);
      zp *= z2;
    }
  } else {
    // (-1)^(n-1) [ (n-1)!/z^n + n!/(2 z^{n+1}) + sum_k B_2k (2k+n-1)!/(2k)! z^{-2k-n} ]
    const double nm1fact = nfact / n;
    const Complex zn = int_power(z, n);
    Complex acc = nm1fact / zn + nfact / (2.0 * zn * z);
    Complex zp = zn * z2;
    for (int k = 1; k <= 7; ++k) {
      double fact_ratio = 1.0;  // (2k+n-1)! / (2k)!
      for (int j = 2 * k + 1; j <= 2 * k + n - 1; ++j) fact_ratio *= j;
      acc += kBernoulli[k - 1] * fact_ratio / zp;
      zp *= z2;
    }
    value = -sign_n * acc;
  }
  return value + shift;
}

Complex fd_derivative(const std::function<Complex(double)>& f, int n, double h) {
  if (n < 1) throw NumericError("fd_derivative: order must be >= 1");
  auto stencil = [&](double step) {
    // Centered binomial stencil: Delta_step^n f / step^n at offsets
    // (n/2 - k) * step, k = 0..n.
    Complex acc(0.0, 0.0);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      double sign = (k % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom * f((0.5 * n - k) * step);
      binom = binom * (n - k) / (k + 1.0);
    }
    return acc / std::pow(step, n);
  };
  // One Richardson step removes the O(h^2) error of the stencil.
  Complex d1 = stencil(h), d2 = stencil(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace gsk
