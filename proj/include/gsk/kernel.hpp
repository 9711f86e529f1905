#pragma once

#include <functional>
#include <utility>

#include "gsk/jet.hpp"
#include "gsk/linalg.hpp"
#include "gsk/model.hpp"

namespace gsk {

/// Nystrom discretization of the integral operator at frequency x.
/// K holds the coupling-independent reduced kernel with symmetrized
/// weights: K[i][j] = sqrt(w_i w_j) V(l_i, l_j; x) / gamma.  The full
/// operator is I + gamma K.
struct NystromSystem {
  QuadratureRule rule;
  Matrix K;
  double x = 0.0;
};

/// Kernel V(lambda, mu; x) including the gamma prefactor:
///   gamma sqrt(F(l)F(m)) [e(l)/e(m) - e(m)/e(l)] / (2 i pi (l - m)),
///   e(l) = exp(i x p(l)/2 + g(l)/2),
/// with the diagonal limit gamma F(l) (x p'(l) - i g'(l)) / (2 pi).
/// Near-diagonal values go through the entire series of sinh(D)/D to avoid
/// cancellation.
Complex kernel_value(const ModelSpec& model, double x, Complex lambda, Complex mu);

/// Assemble the symmetric Nystrom matrix at the model's quadrature order
/// (or `order` when positive).  Validates the model invariants on the
/// nodes first.
NystromSystem assemble(const ModelSpec& model, double x, int order = 0);

/// log det(I + gamma K) as the sum of principal logs of (1 + gamma mu_i)
/// over the eigenvalues mu_i of K.  Requires spectral radius of gamma K
/// below 1 (checked); this keeps every log on the principal branch and the
/// sum free of winding ambiguity.
Complex log_fredholm_det(const NystromSystem& system, Complex gamma);

/// tr K^n via matrix powers; independent of gamma.  n is capped (default 6).
Complex trace_power(const NystromSystem& system, int n, int cap = 6);

/// Jet of log det(I + g K) in the coupling about 0, from per-eigenvalue
/// log1p jets.  Test oracle for the trace series.
Jet log_fredholm_det_jet(const NystromSystem& system, int order);

/// kappa(lambda) = exp( int_{-q}^{q} (nu(lambda) - nu(mu)) / (lambda - mu) dmu ),
/// quadrature at the model's order; the removable point |lambda - mu| < 1e-8
/// is replaced by nu'(mu).
Complex kappa(const ModelSpec& model, Complex lambda);

/// ln kappa (the regularized Cauchy integral itself).
Complex log_kappa(const ModelSpec& model, Complex lambda);

/// Same integral for an externally supplied nu (synthetic test mode).
Complex kappa_synthetic(const std::function<Complex(Complex)>& nu,
                        const std::function<Complex(Complex)>& nu_prime,
                        double q, int order, Complex lambda);

/// lndet at increasing quadrature order until two successive doublings
/// agree to `tol`; starts from the model's order, errors out above the cap.
/// Returns the converged value and the order it was computed at.
std::pair<Complex, int> log_fredholm_det_converged(const ModelSpec& model, double x,
                                                   double tol = 1e-9, int cap = 1024);

}  // namespace gsk
