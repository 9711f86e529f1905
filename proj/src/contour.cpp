#include "gsk/contour.hpp"

#include <cmath>

#include "gsk/quadrature.hpp"

namespace gsk {

ContourRule build_contour(const ModelSpec& model, double delta, int nodes_per_side) {
  if (!(delta > 0.0)) throw NumericError("build_contour: delta must be positive");
  if (nodes_per_side < 2) throw NumericError("build_contour: need >= 2 nodes per side");

  const double q = model.q();
  ContourRule contour;
  contour.q = q;
  contour.delta = delta;
  contour.nodes_per_side = nodes_per_side;

  const Complex corners[4] = {
      Complex(-(q + delta), -delta),
      Complex(q + delta, -delta),
      Complex(q + delta, delta),
      Complex(-(q + delta), delta),
  };
  QuadratureRule base = gauss_legendre(nodes_per_side, 0.0, 1.0);
  contour.nodes.reserve(4 * nodes_per_side);
  contour.weights.reserve(4 * nodes_per_side);
  for (int side = 0; side < 4; ++side) {
    Complex a = corners[side], b = corners[(side + 1) % 4];
    Complex span = b - a;
    for (int k = 0; k < nodes_per_side; ++k) {
      contour.nodes.push_back(a + base.nodes[k] * span);
      contour.weights.push_back(base.weights[k] * span);
    }
  }

  // Spot checks: p, F, g finite on the loop, p injective on the node set.
  std::vector<Complex> pv(contour.nodes.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < contour.nodes.size(); ++i) {
    Complex z = contour.nodes[i];
    pv[i] = model.p().eval(z);
    (void)model.F().eval(z);
    (void)model.g().eval(z);
    scale = std::max(scale, std::abs(pv[i]));
  }
  if (scale == 0.0) scale = 1.0;
  for (std::size_t i = 0; i < pv.size(); ++i)
    for (std::size_t j = i + 1; j < pv.size(); ++j)
      if (std::abs(pv[i] - pv[j]) <= 1e-12 * scale)
        throw NumericError("build_contour: p not injective on the contour nodes");
  return contour;
}

Complex contour_winding(const ContourRule& contour, Complex c) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < contour.nodes.size(); ++i)
    acc += contour.weights[i] / (contour.nodes[i] - c);
  return acc / (2.0 * kPi * kI);
}

}  // namespace gsk
