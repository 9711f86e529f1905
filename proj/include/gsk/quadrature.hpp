#pragma once

#include <vector>

#include "gsk/common.hpp"

namespace gsk {

/// Gauss-Legendre rule on a real segment [a, b].
/// Sum of weights equals b - a; an order-M rule integrates polynomials up
/// to degree 2M-1 exactly.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = -1.0;
  double b = 1.0;
};

/// Nodes and weights by Newton iteration on the Legendre recurrence,
/// accurate to ~1e-15.  Base rules on [-1,1] are cached per order.
QuadratureRule gauss_legendre(int order, double a, double b);

}  // namespace gsk
