#pragma once

#include <functional>

#include "gsk/common.hpp"

namespace gsk {

/// Gamma function for complex argument, Lanczos approximation plus the
/// reflection formula for Re z < 0.5.  Relative accuracy is ~1e-13 on the
/// strip |Im z| <= 5, 0.1 <= |Re z| <= 10.  Throws NumericError at the
/// poles (non-positive integers).
Complex complex_gamma(Complex z);

/// Entire reciprocal 1/Gamma(z); returns 0 at the poles of Gamma.
Complex rgamma(Complex z);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
Complex pochhammer(Complex a, int k);

/// Polygamma function psi^(n)(z), n >= 0, by upward recurrence into the
/// asymptotic region followed by the Bernoulli series.  Intended accuracy
/// ~1e-12 for n <= 8 away from the non-positive integers.
Complex polygamma(int n, Complex z);

/// n-th derivative of f at 0 by centered binomial-stencil differences with
/// one Richardson extrapolation step (evaluations at steps h and h/2).
/// Used as the independent oracle against jet-extracted derivatives.
Complex fd_derivative(const std::function<Complex(double)>& f, int n, double h);

}  // namespace gsk
