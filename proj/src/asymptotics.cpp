#include "gsk/asymptotics.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "gsk/kernel.hpp"
#include "gsk/special.hpp"

namespace gsk {

namespace {

Complex cpow_int(Complex b, int e) {
  if (e < 0) return 1.0 / cpow_int(b, -e);
  Complex acc(1.0, 0.0);
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

double factorial(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

Complex principal_log_checked(Complex z, const char* what) {
  if (z == Complex(0.0, 0.0)) throw NumericError(std::string(what) + ": log of 0");
  if (z.imag() == 0.0 && z.real() < 0.0)
    throw NumericError(std::string(what) + ": branch violation on the negative real axis");
  return std::log(z);
}

Complex segment_integral(const ModelSpec& m, const std::function<Complex(Complex)>& f) {
  QuadratureRule rule = m.segment_rule();
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(Complex(rule.nodes[i], 0.0));
  return acc;
}

void check_dp_nonzero(Complex dpp, Complex dpm) {
  if (dpp == Complex(0.0, 0.0) || dpm == Complex(0.0, 0.0))
    throw NumericError("p'(+-q) vanishes; the expansion formulas are undefined");
}

Jet pochhammer_jet(const Jet& a, int k) {
  Jet acc = Jet::constant(Complex(1.0, 0.0), a.order());
  for (int j = 0; j < k; ++j) acc = acc * (Complex(static_cast<double>(j), 0.0) + a);
  return acc;
}

// ((-1)^{n-1} / (n-1)!)
Complex j_n_prefactor(int n) {
  double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return Complex(sign / factorial(n - 1), 0.0);
}

}  // namespace

Complex AsymptoticPrediction::osc_exponent(int m) const {
  return 2.0 * static_cast<double>(m) * (nu_plus + nu_minus);
}

Complex AsymptoticPrediction::value_at(double x) const {
  Complex acc(0.0, 0.0);
  const double lx = std::log(x);
  for (const auto& t : terms) {
    Complex v = t.amplitude * std::pow(x, t.x_power);
    for (int j = 0; j < t.lnx_power; ++j) v *= lx;
    if (t.m != 0) {
      v *= std::exp(kI * (static_cast<double>(t.m) * x) * omega);
      v *= std::exp(osc_exponent(t.m) * lx);
    }
    acc += v;
  }
  return acc;
}

ConventionChoice calibrate_convention(const ModelSpec& model) {
  const Complex gamma_cal(1e-3, 0.0);
  ModelSpec cal = model.with_gamma(gamma_cal);

  // gamma tr K is exactly affine in x; two samples split it.
  const double x1 = 20.0, x2 = 40.0;
  Complex t1 = gamma_cal * trace_power(assemble(cal, x1), 1);
  Complex t2 = gamma_cal * trace_power(assemble(cal, x2), 1);
  Complex lin = (t2 - t1) / (x2 - x1);
  Complex cst = t1 - x1 * lin;

  Complex ip = segment_integral(cal, [&](Complex z) { return cal.dp().eval(z) * cal.nu(z); });
  Complex ig = segment_integral(cal, [&](Complex z) { return cal.dg().eval(z) * cal.nu(z); });

  static const std::array<Complex, 4> candidates = {Complex(1, 0), Complex(-1, 0),
                                                    Complex(0, 1), Complex(0, -1)};
  auto pick = [&](Complex target, Complex base, double* separation) {
    std::array<double, 4> cost;
    for (std::size_t j = 0; j < candidates.size(); ++j)
      cost[j] = std::abs(target - candidates[j] * base);
    std::size_t best = 0;
    for (std::size_t j = 1; j < cost.size(); ++j)
      if (cost[j] < cost[best]) best = j;
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cost.size(); ++j)
      if (j != best) second = std::min(second, cost[j]);
    *separation =
        cost[best] > 0.0 ? second / cost[best] : std::numeric_limits<double>::infinity();
    if (*separation < 1e3)
      throw NumericError("convention calibration ambiguous: separation " +
                         std::to_string(*separation) + " < 1e3");
    return candidates[best];
  };

  ConventionChoice conv;
  if (std::abs(model.gamma()) == 0.0) {
    // All candidates predict 0; keep defaults.
    return conv;
  }
  conv.s_p = pick(lin, ip, &conv.separation_lead);
  if (std::abs(ig) <= 1e-14 * std::max(1.0, std::abs(ip))) {
    // g-term indistinguishable from zero; leave s_g at its default.
    conv.g_defaulted = true;
    conv.separation_g = 0.0;
  } else {
    conv.s_g = pick(cst, -kI * ig, &conv.separation_g);
  }
  conv.calibrated = true;
  return conv;
}

AsymptoticPrediction leading_terms(const ModelSpec& model, double /*x*/,
                                   const ConventionChoice& conv) {
  AsymptoticPrediction pred;
  pred.omega = model.p_plus() - model.p_minus();
  pred.nu_plus = model.nu_plus();
  pred.nu_minus = model.nu_minus();
  pred.convention = conv;

  Complex ip = segment_integral(model, [&](Complex z) { return model.dp().eval(z) * model.nu(z); });
  Complex ig = segment_integral(model, [&](Complex z) { return model.dg().eval(z) * model.nu(z); });

  pred.terms.push_back({"x^1", 1.0, 0, 0, conv.s_p * ip, "x-linear smooth term"});
  pred.terms.push_back({"x^0[g]", 0.0, 0, 0, conv.s_g * (-kI) * ig, "constant g term"});
  return pred;
}

Complex lemma1_term(const ModelSpec& model, int N) {
  if (N < 1) throw NumericError("lemma1_term: N must be >= 1");
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  Complex tp = cpow_int(kI * model.dg_plus() / dpp, N) * model.nu_plus() * model.nu_plus();
  Complex tm = cpow_int(kI * model.dg_minus() / dpm, N) * model.nu_minus() * model.nu_minus();
  return (tp + tm) / static_cast<double>(N);
}

Complex lemma1_series_coefficient(const ModelSpec& model, int N) {
  if (N < 1) throw NumericError("lemma1_series_coefficient: N must be >= 1");
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  // -sum_s nu_s^2 [ Log p'_s + log(1 - i g'_s u / p'_s) ], u = 1/x.
  Jet lp = Jet::log1p_scaled(-kI * model.dg_plus() / dpp, N);
  Jet lm = Jet::log1p_scaled(-kI * model.dg_minus() / dpm, N);
  Complex np2 = model.nu_plus() * model.nu_plus();
  Complex nm2 = model.nu_minus() * model.nu_minus();
  Jet f = (-np2) * lp + (-nm2) * lm;
  return f.coeff(N);
}

Complex o_tilde(const ModelSpec& model, double x, int n, int k, int sigma) {
  if (sigma != 1 && sigma != -1) throw NumericError("o_tilde: sigma must be +-1");
  if (k < 0 || k > n) throw NumericError("o_tilde: need 0 <= k <= n");
  const double q = model.q();
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  const double s = static_cast<double>(sigma);
  Complex sp = s * model.nu_plus(), sm = s * model.nu_minus();

  Complex amp = std::exp((2.0 * (sp + sm)) * std::log(2.0 * q * x)) / (4.0 * q * q);
  amp *= std::exp((2.0 * sp - 1.0) * principal_log_checked(dpp, "o_tilde p'_+"));
  amp *= std::exp((2.0 * sm - 1.0) * principal_log_checked(dpm, "o_tilde p'_-"));
  amp *= complex_gamma(1.0 - sm) * complex_gamma(1.0 - sp);
  amp *= rgamma(sm) * rgamma(sp);
  Complex lk = log_kappa(model, Complex(-q, 0.0)) - log_kappa(model, Complex(q, 0.0));
  amp *= std::exp(2.0 * s * lk);  // kappa_-^2 / kappa_+^2 on sigma*nu
  amp *= pochhammer(2.0 * sp - 1.0, k) * pochhammer(2.0 * sm - 1.0, n - k);
  amp /= factorial(k) * factorial(n - k);
  return amp;
}

Complex first_oscillating_term(const ModelSpec& model, double x) {
  Complex omega = model.p_plus() - model.p_minus();
  Complex acc(0.0, 0.0);
  for (int sigma : {1, -1}) {
    acc += o_tilde(model, x, 0, 0, sigma) *
           std::exp(kI * (static_cast<double>(sigma) * x) * omega);
  }
  return acc / (x * x);
}

double pochhammer_expansion_residual(Complex alpha, Complex beta, Complex eps1,
                                     Complex eps2, double x, int order) {
  if (std::abs(eps1 / x) >= 0.5 || std::abs(eps2 / x) >= 0.5)
    throw NumericError("pochhammer_expansion_residual: need |eps/x| < 1/2");
  Complex lhs = std::exp(-alpha * principal_log_checked(1.0 - eps1 / x, "poch lhs")) *
                std::exp(-beta * principal_log_checked(1.0 - eps2 / x, "poch lhs"));
  Complex sum(0.0, 0.0);
  for (int n = 0; n <= order; ++n) {
    Complex inner(0.0, 0.0);
    for (int k = 0; k <= n; ++k) {
      inner += cpow_int(eps2, n - k) * cpow_int(eps1, k) * pochhammer(alpha, k) *
               pochhammer(beta, n - k) / (factorial(k) * factorial(n - k));
    }
    sum += inner / cpow_int(Complex(x, 0.0), n);
  }
  return std::abs(lhs - sum);
}

Complex nu0_derivative(int n, bool squared) {
  Jet nu0 = Jet::nu0(Complex(1.0, 0.0), n);
  Jet f = squared ? nu0 * nu0 : nu0;
  return f.derivative_at_zero(n);
}

Complex corollary_nonosc(const ModelSpec& model, int n, int N) {
  if (n < 1 || N < 1) throw NumericError("corollary_nonosc: need n, N >= 1");
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  Complex dn = nu0_derivative(n, /*squared=*/true);
  Complex sum = cpow_int(kI * model.dg_plus() / dpp, N) * cpow_int(model.F_plus(), n) +
                cpow_int(kI * model.dg_minus() / dpm, N) * cpow_int(model.F_minus(), n);
  return j_n_prefactor(n) * sum * dn / static_cast<double>(N);
}

Complex sumrule_rhs_nonosc(const ModelSpec& model, int n, int N) {
  if (n < 1 || N < 1) throw NumericError("sumrule_rhs_nonosc: need n, N >= 1");
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  Complex dn = nu0_derivative(n, model.conventions().nu0_squared);
  Complex sum = cpow_int(kI * model.dg_plus() / dpp, N) * cpow_int(model.F_plus(), n) +
                cpow_int(kI * model.dg_minus() / dpm, N) * cpow_int(model.F_minus(), n);
  return j_n_prefactor(n) * sum * dn / static_cast<double>(N);
}

Jet o_tilde_gamma_jet_generic(const ModelSpec& model, const Expr& w, double x, int n,
                              int k, int sigma, int jet_order) {
  if (sigma != 1 && sigma != -1) throw NumericError("o_tilde jet: sigma must be +-1");
  if (k < 0 || k > n) throw NumericError("o_tilde jet: need 0 <= k <= n");
  const double q = model.q();
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  const Complex s(static_cast<double>(sigma), 0.0);

  // sigma * nu jets at the endpoints; nu(z) = (i/2pi) log(1 + gamma w(z)).
  Jet sp = s * Jet::nu0(w.eval(Complex(q, 0.0)), jet_order);
  Jet sm = s * Jet::nu0(w.eval(Complex(-q, 0.0)), jet_order);

  // ln kappa jets on sigma*nu at both endpoints, one quadrature sweep.
  QuadratureRule rule = model.segment_rule();
  Jet lk_plus(jet_order), lk_minus(jet_order);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    Complex mu(rule.nodes[i], 0.0);
    Jet nmu = s * Jet::nu0(w.eval(mu), jet_order);
    lk_plus = lk_plus + (rule.weights[i] / (q - mu.real())) * (sp - nmu);
    lk_minus = lk_minus + (rule.weights[i] / (-q - mu.real())) * (sm - nmu);
  }

  Jet amp = Jet::exp((2.0 * std::log(2.0 * q * x)) * (sp + sm));
  amp = (1.0 / (4.0 * q * q)) * amp;
  amp = amp * Jet::exp(2.0 * principal_log_checked(dpp, "o_tilde jet p'_+") * sp);
  amp = (1.0 / dpp) * amp;
  amp = amp * Jet::exp(2.0 * principal_log_checked(dpm, "o_tilde jet p'_-") * sm);
  amp = (1.0 / dpm) * amp;
  amp = amp * Jet::exp(lngamma_one_plus(-sm)) * Jet::exp(lngamma_one_plus(-sp));
  amp = amp * rgamma_jet(sm) * rgamma_jet(sp);
  amp = amp * Jet::exp(2.0 * (lk_minus - lk_plus));
  amp = amp * pochhammer_jet(Complex(-1.0, 0.0) + 2.0 * sp, k);
  amp = amp * pochhammer_jet(Complex(-1.0, 0.0) + 2.0 * sm, n - k);
  amp = (1.0 / (factorial(k) * factorial(n - k))) * amp;
  return amp;
}

Jet o_tilde_gamma_jet(const ModelSpec& model, double x, int n, int k, int sigma,
                      int jet_order) {
  return o_tilde_gamma_jet_generic(model, model.F(), x, n, k, sigma, jet_order);
}

namespace {

// Common k-sum of the oscillating corollary / proposition.  weight_plus and
// weight_minus are the two boundary ratios (i g'_+/p'_+ style); the jet for
// the O~ derivative is produced by `jet_at(N, k)`.
Complex oscillating_k_sum(int n, int N, Conventions::IndexConvention idx,
                          Complex weight_plus, Complex weight_minus,
                          const std::function<Jet(int, int)>& jet_at) {
  Complex acc(0.0, 0.0);
  if (idx == Conventions::IndexConvention::kAsPrinted) {
    for (int k = 0; k <= N; ++k) {
      acc += cpow_int(weight_plus, k) * cpow_int(weight_minus, N - k) *
             jet_at(N, k).derivative_at_zero(n);
    }
  } else {
    for (int k = 0; k + 2 <= N; ++k) {
      acc += cpow_int(weight_plus, k) * cpow_int(weight_minus, N - 2 - k) *
             jet_at(N, k).derivative_at_zero(n);
    }
  }
  return acc;
}

}  // namespace

Complex corollary_osc(const ModelSpec& model, double x, int n, int N, int sigma,
                      Conventions::IndexConvention index_convention) {
  if (n < 1 || N < 0) throw NumericError("corollary_osc: need n >= 1, N >= 0");
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  Complex wp = kI * model.dg_plus() / dpp;
  Complex wm = kI * model.dg_minus() / dpm;
  Complex sum = oscillating_k_sum(
      n, N, index_convention, wp, wm,
      [&](int nn, int kk) { return o_tilde_gamma_jet(model, x, nn, kk, sigma, n); });
  Complex expo = std::exp(static_cast<double>(sigma) * (model.g_plus() - model.g_minus()));
  return j_n_prefactor(n) * expo * sum;
}

Complex prop_nonosc_action(const XDepFamily& family, const ModelSpec& model, double x,
                           int n, int N) {
  if (n < 1 || N < 1) throw NumericError("prop_nonosc_action: need n, N >= 1");
  const double q = model.q();
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  ReducedSet rs = reduced_values(family, model, 0);
  Complex dn = nu0_derivative(n, model.conventions().nu0_squared);
  Complex sum(0.0, 0.0);
  for (int sgn : {1, -1}) {
    Complex zq(sgn * q, 0.0);
    Complex dp = (sgn == 1) ? dpp : dpm;
    sum += cpow_int(kI * rs.G_prime(zq) / dp, N) * cpow_int(rs.V(zq), N) /
           static_cast<double>(N);
  }
  return std::exp(x * rs.G + std::log(x) * rs.H) * rs.W * j_n_prefactor(n) * dn * sum;
}

Complex prop_osc_action(const XDepFamily& family, const ModelSpec& model, double x,
                        int n, int N, int m,
                        Conventions::IndexConvention index_convention) {
  if (n < 1 || N < 0) throw NumericError("prop_osc_action: need n >= 1, N >= 0");
  if (m != 1 && m != -1) throw NumericError("prop_osc_action: m must be +-1");
  const double q = model.q();
  Complex dpp = model.dp_plus(), dpm = model.dp_minus();
  check_dp_nonzero(dpp, dpm);
  ReducedSet rs = reduced_values(family, model, m);
  Complex wp = kI * rs.G_prime(Complex(q, 0.0)) / dpp;
  Complex wm = kI * rs.G_prime(Complex(-q, 0.0)) / dpm;
  // sigma in the O~ argument is taken equal to m (frequency pairing).
  Complex sum = oscillating_k_sum(n, N, index_convention, wp, wm, [&](int nn, int kk) {
    return o_tilde_gamma_jet_generic(model, family.v(), x, nn, kk, m, n);
  });
  Complex prefactor = rs.W * std::exp(x * rs.G + std::log(x) * rs.H) / (x * x);
  return prefactor * sum;
}

AsymptoticPrediction prediction_for_fit(const ModelSpec& model,
                                        const ConventionChoice& conv) {
  AsymptoticPrediction pred = leading_terms(model, 1.0, conv);
  // Keep only the x-linear row; the full constant term is not evaluated.
  pred.terms.erase(pred.terms.begin() + 1);
  for (int m : {1, -1}) {
    // O~_{0,0}[m nu] at x = 1 is the x-free amplitude multiplying
    // e^{i m omega x} x^{2m(nu_+ + nu_-) - 2}.  A nonzero g dresses the
    // leading oscillating coefficient with e^{m(g_+ - g_-)}: substituting
    // p -> p - i g/x into the g = 0 amplitude only produces 1/x
    // corrections beyond that factor.
    Complex amp = o_tilde(model, 1.0, 0, 0, m) *
                  std::exp(static_cast<double>(m) * (model.g_plus() - model.g_minus()));
    std::string label = (m == 1) ? "osc[m=+1]" : "osc[m=-1]";
    pred.terms.push_back({label, -2.0, 0, m, amp, "first oscillating term, g-dressed"});
  }
  return pred;
}

}  // namespace gsk
