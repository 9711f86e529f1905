#include "gsk/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace gsk {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double* p, double* dp) {
  double p0 = 1.0, p1 = x;
  for (int j = 2; j <= n; ++j) {
    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  *p = p1;
  *dp = n * (x * p1 - p0) / (x * x - 1.0);
}

QuadratureRule base_rule(int order) {
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Tricomi initial guess for the k-th root (descending).
    double x = std::cos(kPi * (k + 0.75) / (order + 0.5));
    double p, dp;
    for (int it = 0; it < 64; ++it) {
      legendre(order, x, &p, &dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(order, x, &p, &dp);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Enforce symmetry exactly.
    rule.nodes[order - 1 - k] = x;
    rule.nodes[k] = -x;
    rule.weights[k] = w;
    rule.weights[order - 1 - k] = w;
  }
  if (order % 2 == 1) rule.nodes[half - 1] = 0.0;
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 1) throw NumericError("gauss_legendre: order must be >= 1");

  static std::mutex mtx;
  static std::map<int, QuadratureRule> cache;
  QuadratureRule base;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, base_rule(order)).first;
    base = it->second;
  }

  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double mid = 0.5 * (a + b), scale = 0.5 * (b - a);
  for (int k = 0; k < order; ++k) {
    rule.nodes[k] = mid + scale * base.nodes[k];
    rule.weights[k] = scale * base.weights[k];
  }
  return rule;
}

}  // namespace gsk
