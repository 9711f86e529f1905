#pragma once

#include <memory>
#include <span>
#include <vector>

#include "gsk/expr.hpp"

namespace gsk {

/// A symmetric function bound to fixed node tables, so that tensor
/// quadrature loops can evaluate it by node index without re-walking
/// expression trees.
class PreparedSymmetricFn {
 public:
  virtual ~PreparedSymmetricFn() = default;
  virtual Complex eval_at(const int* lambda_idx, const int* z_idx, int n) const = 0;
};

/// F_n({lambda} | {z}): holomorphic in all variables, symmetric separately
/// within the lambda set and within the z set.  May depend on x.
class SymmetricFn {
 public:
  virtual ~SymmetricFn() = default;
  virtual int arity() const = 0;
  virtual Complex eval(std::span<const Complex> lambdas, std::span<const Complex> zs,
                       double x) const = 0;
  virtual std::unique_ptr<PreparedSymmetricFn> prepare(std::span<const Complex> lambda_nodes,
                                                       std::span<const Complex> z_nodes,
                                                       double x) const;
  /// Product structure prod_k phi(lambda_k) e^{g(z_k)}; enables the
  /// factorized cyclic-quadrature path.
  virtual bool is_pure_product() const { return false; }
  virtual Complex lambda_factor(Complex lambda) const;
  virtual Complex z_factor(Complex z) const;
};

/// F_n = prod_k phi(lambda_k) e^{g(z_k)}.
class PureProductFn : public SymmetricFn {
 public:
  PureProductFn(Expr phi, Expr g, int n);
  int arity() const override { return n_; }
  Complex eval(std::span<const Complex> lambdas, std::span<const Complex> zs,
               double x) const override;
  std::unique_ptr<PreparedSymmetricFn> prepare(std::span<const Complex> lambda_nodes,
                                               std::span<const Complex> z_nodes,
                                               double x) const override;
  bool is_pure_product() const override { return true; }
  Complex lambda_factor(Complex lambda) const override { return phi_.eval(lambda); }
  Complex z_factor(Complex z) const override { return std::exp(g_.eval(z)); }

 private:
  Expr phi_, g_;
  int n_;
};

/// Constant symmetric function.
class ConstantFn : public SymmetricFn {
 public:
  ConstantFn(Complex value, int n) : value_(value), n_(n) {}
  int arity() const override { return n_; }
  Complex eval(std::span<const Complex>, std::span<const Complex>, double) const override {
    return value_;
  }

 private:
  Complex value_;
  int n_;
};

}  // namespace gsk
