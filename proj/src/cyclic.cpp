#include "gsk/cyclic.hpp"

#include <cmath>
#include <sstream>

#include "gsk/kernel.hpp"
#include "gsk/parallel.hpp"
#include "gsk/quadrature.hpp"

namespace gsk {

namespace {

struct Kahan {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  void add(Complex v) {
    Complex y = v - comp;
    Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Per-node factors: Ez = w e^{i x p(z)} / (2 i pi) on the contour,
// El = w e^{-i x p(l)} / (2 i pi) on the segment.
struct NodeData {
  std::vector<Complex> z_nodes, z_factor;
  std::vector<Complex> l_nodes, l_factor;
};

NodeData make_nodes(const ModelSpec& model, double x, const ContourRule& contour,
                    const QuadratureRule& segment) {
  NodeData nd;
  const Complex inv2pii = 1.0 / (2.0 * kPi * kI);
  nd.z_nodes = contour.nodes;
  nd.z_factor.resize(contour.nodes.size());
  for (std::size_t i = 0; i < contour.nodes.size(); ++i) {
    nd.z_factor[i] =
        contour.weights[i] * std::exp(kI * x * model.p().eval(contour.nodes[i])) * inv2pii;
  }
  nd.l_nodes.resize(segment.nodes.size());
  nd.l_factor.resize(segment.nodes.size());
  for (std::size_t i = 0; i < segment.nodes.size(); ++i) {
    Complex l(segment.nodes[i], 0.0);
    nd.l_nodes[i] = l;
    nd.l_factor[i] = segment.weights[i] * std::exp(-kI * x * model.p().eval(l)) * inv2pii;
  }
  return nd;
}

Complex tensor_value_n1(const SymmetricFn& fn, const NodeData& nd, double x) {
  auto prepared = fn.prepare(nd.l_nodes, nd.z_nodes, x);
  const int nz = static_cast<int>(nd.z_nodes.size());
  const int nl = static_cast<int>(nd.l_nodes.size());
  Kahan acc;
  for (int zi = 0; zi < nz; ++zi) {
    for (int li = 0; li < nl; ++li) {
      Complex d = nd.l_nodes[li] - nd.z_nodes[zi];
      Complex f = prepared->eval_at(&li, &zi, 1);
      acc.add(f * nd.z_factor[zi] * nd.l_factor[li] / (d * d));
    }
  }
  return acc.sum;
}

// Factorized path for product functions:
//   I_2 = sum_{z1,z2} A(z1) A(z2) C(z1,z2) C(z2,z1),
//   C(u,v) = sum_l B(l) / ((l-u)(l-v)).
Complex tensor_value_n2_product(const SymmetricFn& fn, const NodeData& nd) {
  const int nz = static_cast<int>(nd.z_nodes.size());
  const int nl = static_cast<int>(nd.l_nodes.size());
  std::vector<Complex> a(nz), b(nl);
  for (int zi = 0; zi < nz; ++zi)
    a[zi] = nd.z_factor[zi] * fn.z_factor(nd.z_nodes[zi]);
  for (int li = 0; li < nl; ++li)
    b[li] = nd.l_factor[li] * fn.lambda_factor(nd.l_nodes[li]);

  std::vector<Complex> c(static_cast<std::size_t>(nz) * nz);
  int chunks = 0;
  parallel_chunks(
      nz,
      [&](int begin, int end, int) {
        for (int z1 = begin; z1 < end; ++z1) {
          for (int z2 = 0; z2 < nz; ++z2) {
            Kahan acc;
            for (int li = 0; li < nl; ++li)
              acc.add(b[li] / ((nd.l_nodes[li] - nd.z_nodes[z1]) *
                               (nd.l_nodes[li] - nd.z_nodes[z2])));
            c[static_cast<std::size_t>(z1) * nz + z2] = acc.sum;
          }
        }
      },
      &chunks);

  Kahan total;
  for (int z1 = 0; z1 < nz; ++z1)
    for (int z2 = 0; z2 < nz; ++z2)
      total.add(a[z1] * a[z2] * c[static_cast<std::size_t>(z1) * nz + z2] *
                c[static_cast<std::size_t>(z2) * nz + z1]);
  return total.sum;
}

Complex tensor_value_n2_generic(const SymmetricFn& fn, const NodeData& nd, double x) {
  auto prepared = fn.prepare(nd.l_nodes, nd.z_nodes, x);
  const int nz = static_cast<int>(nd.z_nodes.size());
  const int nl = static_cast<int>(nd.l_nodes.size());

  int chunks = 0;
  std::vector<Complex> partial(std::max(1, std::min(thread_budget(), nz)));
  parallel_chunks(
      nz,
      [&](int begin, int end, int chunk) {
        Kahan acc;
        int idx_l[2], idx_z[2];
        for (int z1 = begin; z1 < end; ++z1) {
          idx_z[0] = z1;
          for (int z2 = 0; z2 < nz; ++z2) {
            idx_z[1] = z2;
            Complex zf = nd.z_factor[z1] * nd.z_factor[z2];
            for (int l1 = 0; l1 < nl; ++l1) {
              idx_l[0] = l1;
              Complex p1 = (nd.l_nodes[l1] - nd.z_nodes[z1]) *
                           (nd.l_nodes[l1] - nd.z_nodes[z2]);
              Complex f1 = zf * nd.l_factor[l1] / p1;
              for (int l2 = 0; l2 < nl; ++l2) {
                idx_l[1] = l2;
                Complex p2 = (nd.l_nodes[l2] - nd.z_nodes[z2]) *
                             (nd.l_nodes[l2] - nd.z_nodes[z1]);
                Complex f = prepared->eval_at(idx_l, idx_z, 2);
                acc.add(f * f1 * nd.l_factor[l2] / p2);
              }
            }
          }
        }
        partial[chunk] = acc.sum;
      },
      &chunks);
  Complex total(0.0, 0.0);
  for (int cidx = 0; cidx < chunks; ++cidx) total += partial[cidx];
  return total;
}

}  // namespace

Complex cyclic_integral(const SymmetricFn& fn, const ModelSpec& model, double x, int n,
                        CyclicTrail* trail, double rel_tol) {
  if (n != 1 && n != 2)
    throw NumericError("cyclic_integral: n capped at 2 (tensor quadrature budget)");
  if (fn.arity() != n) throw ModelError("cyclic_integral: function arity != n");

  const double delta = model.contour().delta;

  // Oscillation guard: |e^{ixp}| grows like e^{x delta |p'|} off the axis.
  {
    ContourRule probe = build_contour(model, delta, 16);
    double max_dp = 0.0;
    for (const auto& z : probe.nodes) max_dp = std::max(max_dp, std::abs(model.dp().eval(z)));
    double growth = x * delta * max_dp;
    if (growth > 40.0)
      throw NumericError("cyclic_integral: x*delta*max|p'| = " + std::to_string(growth) +
                         " > 40; the contour quadrature is unusable at this x");
  }

  int per_side = (n == 1) ? model.contour().nodes_per_side : 32;
  int seg_order = (n == 1) ? std::max(64, model.quad_order() / 2) : 32;
  const bool product = fn.is_pure_product();
  const int max_per_side = (n == 1) ? 1024 : (product ? 256 : 64);

  CyclicTrail local;
  CyclicTrail& tr = trail ? *trail : local;
  Complex prev(0.0, 0.0);
  bool have_prev = false;
  for (;;) {
    ContourRule contour = build_contour(model, delta, per_side);
    QuadratureRule segment = gauss_legendre(seg_order, -model.q(), model.q());
    NodeData nd = make_nodes(model, x, contour, segment);
    Complex value;
    if (n == 1) {
      value = tensor_value_n1(fn, nd, x);
    } else if (product) {
      value = tensor_value_n2_product(fn, nd);
    } else {
      value = tensor_value_n2_generic(fn, nd, x);
    }
    tr.steps.push_back({per_side, seg_order, value});
    if (have_prev && std::abs(value - prev) <= rel_tol * std::abs(value) + 1e-12) {
      tr.converged = true;
      return value;
    }
    have_prev = true;
    prev = value;
    if (2 * per_side > max_per_side) break;
    per_side *= 2;
    seg_order *= 2;
  }
  std::ostringstream os;
  os << "cyclic_integral: no convergence after doubling; last two values ";
  const auto& s = tr.steps;
  os << "(" << s[s.size() - 2].value.real() << "," << s[s.size() - 2].value.imag() << ") and ("
     << s[s.size() - 1].value.real() << "," << s[s.size() - 1].value.imag() << ")";
  throw NumericError(os.str());
}

LinkReport link_check(const ModelSpec& model, double x, int n) {
  Expr phi;
  if (model.f_is_phi_exp_g()) {
    phi = *model.phi();
  } else if (model.g().is_zero_literal()) {
    phi = model.F();  // F = phi e^0
  } else {
    throw ModelError("link_check: model must declare F = phi * exp(g)");
  }
  PureProductFn fn(phi, model.g(), n);
  LinkReport rep;
  rep.lhs = cyclic_integral(fn, model, x, n);
  rep.rhs = trace_power(assemble(model, x), n);
  rep.rel_err = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.rhs), 1e-30);
  return rep;
}

Complex finite_difference_moment(const Expr& v, Complex z, int t, const ModelSpec& model) {
  if (t < 1) throw NumericError("finite_difference_moment: t must be >= 1");
  QuadratureRule rule = model.segment_rule();
  Expr dv = v.derivative();
  Complex vz = v.eval(z);
  auto pow_t = [&](Complex b, int e) {
    Complex acc(1.0, 0.0);
    for (int j = 0; j < e; ++j) acc *= b;
    return acc;
  };
  Complex vz_t = pow_t(vz, t);
  Kahan acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    Complex mu(rule.nodes[i], 0.0);
    Complex term;
    if (std::abs(z - mu) < 1e-8) {
      Complex vm = v.eval(mu);
      term = static_cast<double>(t) * pow_t(vm, t - 1) * dv.eval(mu);
    } else {
      term = (vz_t - pow_t(v.eval(mu), t)) / (z - mu);
    }
    acc.add(rule.weights[i] * term);
  }
  return acc.sum;
}

}  // namespace gsk
