#pragma once

#include <vector>

#include "gsk/contour.hpp"
#include "gsk/model.hpp"
#include "gsk/symfn.hpp"

namespace gsk {

/// Node counts tried and the value at each, for convergence reporting.
struct CyclicTrail {
  struct Step {
    int nodes_per_side;
    int segment_order;
    Complex value;
  };
  std::vector<Step> steps;
  bool converged = false;
};

/// Direct tensor quadrature of the cyclic integral
///   I_n[F_n] = loop d^n z/(2 i pi)^n  int_{-q}^q d^n l/(2 i pi)^n  F_n({l}|{z})
///              prod_k e^{i x (p(z_k) - p(l_k))} / ((l_k - z_k)(l_k - z_{k+1})),
/// z_{n+1} = z_1, for n in {1, 2}.  Node counts double until two successive
/// values agree to rel_tol; non-convergence raises a NumericError carrying
/// the last two values.  Summation order is fixed (compensated), so results
/// are bit-reproducible at a fixed thread count.
Complex cyclic_integral(const SymmetricFn& fn, const ModelSpec& model, double x, int n,
                        CyclicTrail* trail = nullptr, double rel_tol = 1e-6);

struct LinkReport {
  Complex lhs;  // cyclic integral of the pure product
  Complex rhs;  // tr K^n
  double rel_err;
};

/// J_n = I_n identity: cyclic integral of prod phi(l_k) e^{g(z_k)} against
/// tr K^n from the Nystrom matrix.  Requires the model to expose the
/// F = phi e^g split (or g identically zero, in which case phi = F).
LinkReport link_check(const ModelSpec& model, double x, int n);

/// Quadrature of int_{-q}^{q} (v(z)^t - v(mu)^t) / (z - mu) dmu; the
/// removable point is evaluated as t v^{t-1} v'.
Complex finite_difference_moment(const Expr& v, Complex z, int t, const ModelSpec& model);

}  // namespace gsk
