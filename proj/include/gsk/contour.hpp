#pragma once

#include <vector>

#include "gsk/model.hpp"

namespace gsk {

/// Counterclockwise rectangular loop of index 1 around [-q, q]: corners at
/// (+-(q+delta), +-delta), each side carrying a mapped Gauss-Legendre rule.
/// Weights include the dz/dt factor of the parameterization.
struct ContourRule {
  std::vector<Complex> nodes;
  std::vector<Complex> weights;
  double q = 1.0;
  double delta = 0.5;
  int nodes_per_side = 64;
};

/// Build the loop and spot-check the model on it: p, F, g evaluable at
/// every node and p injective on the node set.
ContourRule build_contour(const ModelSpec& model, double delta, int nodes_per_side);

/// Quadrature of (1/2pi i) contour-integral dz/(z - c); equals 1 for c
/// inside the loop.  Winding diagnostic used by the contour tests.
Complex contour_winding(const ContourRule& contour, Complex c);

}  // namespace gsk
