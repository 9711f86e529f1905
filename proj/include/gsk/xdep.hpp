#pragma once

#include <functional>
#include <memory>

#include "gsk/model.hpp"
#include "gsk/symfn.hpp"

namespace gsk {

/// The constructive x-dependent symmetric-function family
///   F_n({l}|{z}) = exp( x G_n + ln x H_n ) W_n prod_i V(l_i)
/// with additive exponents G_n = sum a(l_i) - sum a(z_i) (H_n likewise
/// from b), a set-independent one-variable generator V = v, and the pair
/// ratio
///   W_n = prod_{i,j} w(l_i, z_j) / [ prod_{i<j} w(l_i,l_j) prod_{i<j} w(z_i,z_j) ],
///   w(u,u') = 1 + c (u - u')^2.
/// Setting any z_s = l_k collapses F_n to F_{n-1} on the remaining
/// variables (the reduction property), exactly, by telescoping.
class XDepFamily {
 public:
  XDepFamily(Expr a, Expr b, Expr v, double c);
  static XDepFamily from_params(const XDepParams& p) {
    return XDepFamily(p.a, p.b, p.v, p.c);
  }
  /// Family with w(u,u) = 1.1 instead of 1: deliberately violates the
  /// reduction property.  Used to test that the checker flags defects.
  static XDepFamily broken(Expr a, Expr b, Expr v, double c);

  Complex omega(Complex u, Complex w) const;
  Complex eval(std::span<const Complex> lambdas, std::span<const Complex> zs,
               double x) const;

  const Expr& a() const { return a_; }
  const Expr& b() const { return b_; }
  const Expr& v() const { return v_; }
  const Expr& da() const { return da_; }
  double c() const { return c_; }

 private:
  Expr a_, b_, v_, da_;
  double c_;
  double diag_ = 1.0;
};

/// Core of the family without the one-variable product:
///   C_n = exp( x G_n + ln x H_n ) W_n.
/// This is the part whose constituents carry the reduction property; the
/// product prod_i v(l_i) deliberately does not collapse under z_s = l_k
/// (its leftover factors are what the functional actions turn into the
/// V^t difference integrals).
Complex xdep_core(const XDepFamily& family, std::span<const Complex> lambdas,
                  std::span<const Complex> zs, double x);

/// Maximum relative reduction defect of the core C_n over `samples` random
/// collision patterns z_s = l_k at set size n.  Exactly zero up to rounding
/// for a well-formed family; order 0.1 for the broken one.
double reduction_check(const XDepFamily& family, int n, int samples, double q,
                       unsigned seed = 12345);

/// The scalars and evaluators entering the leading-action formulas.
/// m = 0: fully reduced values G = G_1(z|z), H, W = W_0, V(l), and
/// G'(l) = d/de G_1(l | l+e) at e=0.
/// m = +-1: almost reduced values G = G_1(-mq|mq), H = H_1(-mq|mq),
/// W = W_1(-mq|mq), V(z) = V_1(z|-mq|mq), G'(z) = d/de G_2(-mq,z|mq,z+e).
struct ReducedSet {
  int m = 0;
  Complex G, H, W;
  std::function<Complex(Complex)> V;
  std::function<Complex(Complex)> G_prime;
};

ReducedSet reduced_values(const XDepFamily& family, const ModelSpec& model, int m);

/// SymmetricFn adapter so a family can be fed to the cyclic quadrature.
class XDepSymmetricFn : public SymmetricFn {
 public:
  XDepSymmetricFn(const XDepFamily& family, int n) : family_(family), n_(n) {}
  int arity() const override { return n_; }
  Complex eval(std::span<const Complex> lambdas, std::span<const Complex> zs,
               double x) const override {
    return family_.eval(lambdas, zs, x);
  }
  std::unique_ptr<PreparedSymmetricFn> prepare(std::span<const Complex> lambda_nodes,
                                               std::span<const Complex> z_nodes,
                                               double x) const override;

 private:
  const XDepFamily& family_;
  int n_;
};

}  // namespace gsk
