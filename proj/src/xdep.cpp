#include "gsk/xdep.hpp"

#include <cmath>
#include <random>

namespace gsk {

XDepFamily::XDepFamily(Expr a, Expr b, Expr v, double c)
    : a_(std::move(a)), b_(std::move(b)), v_(std::move(v)), da_(a_.derivative()), c_(c) {}

XDepFamily XDepFamily::broken(Expr a, Expr b, Expr v, double c) {
  XDepFamily f(std::move(a), std::move(b), std::move(v), c);
  f.diag_ = 1.1;
  return f;
}

Complex XDepFamily::omega(Complex u, Complex w) const {
  Complex d = u - w;
  return diag_ + c_ * d * d;
}

Complex XDepFamily::eval(std::span<const Complex> lambdas, std::span<const Complex> zs,
                         double x) const {
  if (lambdas.size() != zs.size())
    throw ModelError("xdep eval: lambda and z sets must have equal size");
  const int n = static_cast<int>(lambdas.size());
  if (n == 0) return Complex(1.0, 0.0);

  Complex G(0.0, 0.0), H(0.0, 0.0), V(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    G += a_.eval(lambdas[i]) - a_.eval(zs[i]);
    H += b_.eval(lambdas[i]) - b_.eval(zs[i]);
    V *= v_.eval(lambdas[i]);
  }

  Complex W(1.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex w = omega(lambdas[i], zs[j]);
      if (std::abs(w) < 1e-12) throw NumericError("xdep eval: omega vanishes");
      W *= w;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Complex wl = omega(lambdas[i], lambdas[j]);
      Complex wz = omega(zs[i], zs[j]);
      if (std::abs(wl) < 1e-12 || std::abs(wz) < 1e-12)
        throw NumericError("xdep eval: omega vanishes");
      W /= wl * wz;
    }

  return std::exp(x * G + std::log(x) * H) * W * V;
}

Complex xdep_core(const XDepFamily& family, std::span<const Complex> lambdas,
                  std::span<const Complex> zs, double x) {
  if (lambdas.size() != zs.size())
    throw ModelError("xdep core: lambda and z sets must have equal size");
  const int n = static_cast<int>(lambdas.size());
  if (n == 0) return Complex(1.0, 0.0);
  Complex v_product(1.0, 0.0);
  for (int i = 0; i < n; ++i) v_product *= family.v().eval(lambdas[i]);
  return family.eval(lambdas, zs, x) / v_product;
}

double reduction_check(const XDepFamily& family, int n, int samples, double q,
                       unsigned seed) {
  if (n < 1) throw ModelError("reduction_check: n must be >= 1");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re(-q, q), im(-0.3, 0.3), xr(1.0, 5.0);
  std::uniform_int_distribution<int> pick(0, n - 1);

  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<Complex> ls(n), zs(n);
    for (int k = 0; k < n; ++k) {
      ls[k] = Complex(re(rng), im(rng));
      zs[k] = Complex(re(rng), im(rng));
    }
    int kc = pick(rng), sc = pick(rng);
    zs[sc] = ls[kc];
    double x = xr(rng);

    Complex full = xdep_core(family, ls, zs, x);
    std::vector<Complex> ls_red, zs_red;
    for (int k = 0; k < n; ++k) {
      if (k != kc) ls_red.push_back(ls[k]);
      if (k != sc) zs_red.push_back(zs[k]);
    }
    Complex reduced = xdep_core(family, ls_red, zs_red, x);
    double defect = std::abs(full - reduced) / std::max(std::abs(reduced), 1e-300);
    worst = std::max(worst, defect);
  }
  return worst;
}

ReducedSet reduced_values(const XDepFamily& family, const ModelSpec& model, int m) {
  if (m != 0 && m != 1 && m != -1)
    throw ModelError("reduced_values: m must be 0 or +-1");
  ReducedSet rs;
  rs.m = m;
  const double q = model.q();
  if (m == 0) {
    // G_1(z|z) = a(z) - a(z) = 0 for the additive family; W_0 is an empty
    // product.  Evaluate rather than assume, so a changed family shows up.
    Complex z0(0.0, 0.0);
    rs.G = family.a().eval(z0) - family.a().eval(z0);
    rs.H = family.b().eval(z0) - family.b().eval(z0);
    rs.W = Complex(1.0, 0.0);
  } else {
    Complex lo(-m * q, 0.0), hi(m * q, 0.0);
    rs.G = family.a().eval(lo) - family.a().eval(hi);
    rs.H = family.b().eval(lo) - family.b().eval(hi);
    rs.W = family.omega(lo, hi);
  }
  const Expr v = family.v();
  const Expr da = family.da();
  rs.V = [v](Complex z) { return v.eval(z); };
  // d/de G(... z | ... z+e) at e=0 picks out -a'(z) for both the fully and
  // the almost reduced variants.
  rs.G_prime = [da](Complex z) { return -da.eval(z); };
  return rs;
}

namespace {

class XDepPrepared : public PreparedSymmetricFn {
 public:
  XDepPrepared(const XDepFamily& family, std::span<const Complex> lambda_nodes,
               std::span<const Complex> z_nodes, double x)
      : family_(family),
        ln_(lambda_nodes.begin(), lambda_nodes.end()),
        zn_(z_nodes.begin(), z_nodes.end()),
        x_(x),
        logx_(std::log(x)) {
    a_l_.resize(ln_.size());
    b_l_.resize(ln_.size());
    v_l_.resize(ln_.size());
    for (std::size_t i = 0; i < ln_.size(); ++i) {
      a_l_[i] = family.a().eval(ln_[i]);
      b_l_[i] = family.b().eval(ln_[i]);
      v_l_[i] = family.v().eval(ln_[i]);
    }
    a_z_.resize(zn_.size());
    b_z_.resize(zn_.size());
    for (std::size_t i = 0; i < zn_.size(); ++i) {
      a_z_[i] = family.a().eval(zn_[i]);
      b_z_[i] = family.b().eval(zn_[i]);
    }
  }

  Complex eval_at(const int* li, const int* zi, int n) const override {
    Complex G(0.0, 0.0), H(0.0, 0.0), V(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
      G += a_l_[li[k]] - a_z_[zi[k]];
      H += b_l_[li[k]] - b_z_[zi[k]];
      V *= v_l_[li[k]];
    }
    Complex W(1.0, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) W *= family_.omega(ln_[li[i]], zn_[zi[j]]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        W /= family_.omega(ln_[li[i]], ln_[li[j]]) * family_.omega(zn_[zi[i]], zn_[zi[j]]);
    return std::exp(x_ * G + logx_ * H) * W * V;
  }

 private:
  const XDepFamily& family_;
  std::vector<Complex> ln_, zn_;
  double x_;
  Complex logx_;
  std::vector<Complex> a_l_, b_l_, v_l_, a_z_, b_z_;
};

}  // namespace

std::unique_ptr<PreparedSymmetricFn> XDepSymmetricFn::prepare(
    std::span<const Complex> lambda_nodes, std::span<const Complex> z_nodes,
    double x) const {
  return std::make_unique<XDepPrepared>(family_, lambda_nodes, z_nodes, x);
}

}  // namespace gsk
