#include "gsk/symfn.hpp"

#include <cmath>

namespace gsk {

namespace {

// Fallback: look node values up and call the generic evaluator.
class GenericPrepared : public PreparedSymmetricFn {
 public:
  GenericPrepared(const SymmetricFn& fn, std::span<const Complex> lambda_nodes,
                  std::span<const Complex> z_nodes, double x)
      : fn_(fn),
        lambda_nodes_(lambda_nodes.begin(), lambda_nodes.end()),
        z_nodes_(z_nodes.begin(), z_nodes.end()),
        x_(x) {}

  Complex eval_at(const int* lambda_idx, const int* z_idx, int n) const override {
    std::vector<Complex> ls(n), zs(n);
    for (int k = 0; k < n; ++k) {
      ls[k] = lambda_nodes_[lambda_idx[k]];
      zs[k] = z_nodes_[z_idx[k]];
    }
    return fn_.eval(ls, zs, x_);
  }

 private:
  const SymmetricFn& fn_;
  std::vector<Complex> lambda_nodes_, z_nodes_;
  double x_;
};

class ProductPrepared : public PreparedSymmetricFn {
 public:
  ProductPrepared(std::vector<Complex> lf, std::vector<Complex> zf)
      : lf_(std::move(lf)), zf_(std::move(zf)) {}

  Complex eval_at(const int* lambda_idx, const int* z_idx, int n) const override {
    Complex acc(1.0, 0.0);
    for (int k = 0; k < n; ++k) acc *= lf_[lambda_idx[k]] * zf_[z_idx[k]];
    return acc;
  }

 private:
  std::vector<Complex> lf_, zf_;
};

}  // namespace

std::unique_ptr<PreparedSymmetricFn> SymmetricFn::prepare(
    std::span<const Complex> lambda_nodes, std::span<const Complex> z_nodes,
    double x) const {
  return std::make_unique<GenericPrepared>(*this, lambda_nodes, z_nodes, x);
}

Complex SymmetricFn::lambda_factor(Complex) const {
  throw NumericError("symmetric function has no product structure");
}

Complex SymmetricFn::z_factor(Complex) const {
  throw NumericError("symmetric function has no product structure");
}

PureProductFn::PureProductFn(Expr phi, Expr g, int n)
    : phi_(std::move(phi)), g_(std::move(g)), n_(n) {}

Complex PureProductFn::eval(std::span<const Complex> lambdas, std::span<const Complex> zs,
                            double) const {
  Complex acc(1.0, 0.0);
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    acc *= phi_.eval(lambdas[k]) * std::exp(g_.eval(zs[k]));
  return acc;
}

std::unique_ptr<PreparedSymmetricFn> PureProductFn::prepare(
    std::span<const Complex> lambda_nodes, std::span<const Complex> z_nodes,
    double) const {
  std::vector<Complex> lf(lambda_nodes.size()), zf(z_nodes.size());
  for (std::size_t i = 0; i < lambda_nodes.size(); ++i) lf[i] = phi_.eval(lambda_nodes[i]);
  for (std::size_t i = 0; i < z_nodes.size(); ++i) zf[i] = std::exp(g_.eval(z_nodes[i]));
  return std::make_unique<ProductPrepared>(std::move(lf), std::move(zf));
}

}  // namespace gsk
