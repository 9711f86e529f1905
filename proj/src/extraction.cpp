#include "gsk/extraction.hpp"

#include <cmath>

#include "gsk/kernel.hpp"
#include "gsk/linalg.hpp"
#include "gsk/parallel.hpp"

namespace gsk {

std::vector<LndetSample> sample_lndet(const ModelSpec& model, const XGrid& grid,
                                      double tol) {
  if (grid.count < 1) throw ModelError("sample_lndet: empty grid");
  std::vector<LndetSample> samples(grid.count);
  double step = grid.count > 1 ? (grid.xmax - grid.xmin) / (grid.count - 1) : 0.0;
  parallel_for_index(grid.count, [&](int i) {
    double x = grid.xmin + step * i;
    auto [value, order] = log_fredholm_det_converged(model, x, tol);
    samples[i] = {x, value, order};
  });
  return samples;
}

FitSpec make_fit_spec(const ModelSpec& model, const std::string& basis,
                      bool oscillating) {
  FitSpec spec;
  spec.terms = {
      {"x^1", 1.0, 0, 0},         {"x^0", 0.0, 0, 0},         {"x^0*lnx^1", 0.0, 1, 0},
      {"x^-1", -1.0, 0, 0},       {"x^-1*lnx^1", -1.0, 1, 0}, {"x^-1*lnx^2", -1.0, 2, 0},
  };
  if (basis == "deep") {
    spec.terms.push_back({"x^-2", -2.0, 0, 0});
    spec.terms.push_back({"x^-2*lnx^1", -2.0, 1, 0});
    spec.terms.push_back({"x^-2*lnx^2", -2.0, 2, 0});
  } else if (basis != "default") {
    throw ModelError("make_fit_spec: unknown basis '" + basis + "'");
  }
  spec.omega = model.p_plus() - model.p_minus();
  Complex rho = 2.0 * (model.nu_plus() + model.nu_minus());
  spec.rho_plus = rho;
  spec.rho_minus = -rho;
  if (oscillating) {
    spec.terms.push_back({"osc[m=+1]", -2.0, 0, 1});
    spec.terms.push_back({"osc[m=-1]", -2.0, 0, -1});
  }
  return spec;
}

namespace {

Complex basis_value(const FitSpec& spec, const FitBasisTerm& term, double x) {
  double lx = std::log(x);
  Complex v = std::pow(x, term.x_power);
  for (int j = 0; j < term.lnx_power; ++j) v *= lx;
  if (term.m != 0) {
    Complex rho = term.m > 0 ? spec.rho_plus : spec.rho_minus;
    v *= std::exp(kI * (static_cast<double>(term.m) * x) * spec.omega);
    v *= std::exp(rho * lx);
  }
  return v;
}

}  // namespace

FitResult fit_expansion(const std::vector<LndetSample>& samples, const FitSpec& spec) {
  const int rows = static_cast<int>(samples.size());
  const int cols = static_cast<int>(spec.terms.size());
  if (rows < cols) throw NumericError("fit_expansion: need at least as many samples as terms");

  bool has_osc = false;
  for (const auto& t : spec.terms) has_osc |= (t.m != 0);
  if (has_osc && rows > 1) {
    double dx = samples[1].x - samples[0].x;
    double w = std::abs(spec.omega);
    if (w > 0.0 && dx >= kPi / w)
      throw NumericError("fit_expansion: grid spacing " + std::to_string(dx) +
                         " violates the Nyquist bound pi/|omega|");
  }

  Matrix design(rows, cols);
  Vector rhs(rows);
  for (int i = 0; i < rows; ++i) {
    rhs(i) = samples[i].lndet;
    for (int j = 0; j < cols; ++j) design(i, j) = basis_value(spec, spec.terms[j], samples[i].x);
  }

  // Column scaling keeps the QR well conditioned across x-power decades.
  std::vector<double> scale(cols);
  for (int j = 0; j < cols; ++j) {
    double s = design.col(j).cwiseAbs().maxCoeff();
    scale[j] = (s > 0.0) ? s : 1.0;
    design.col(j) /= scale[j];
  }

  auto lsq = least_squares_complex(design, rhs, spec.rank_tol);
  Vector coeffs = lsq.coefficients;
  // Mixed-precision iterative refinement: the residual is accumulated in
  // long double so consistent systems recover their coefficients to well
  // below the condition-driven single-pass error.
  auto residual_ld = [&](const Vector& c) {
    Vector r(rows);
    for (int i = 0; i < rows; ++i) {
      long double re = rhs(i).real(), im = rhs(i).imag();
      for (int j = 0; j < cols; ++j) {
        const Complex& a = design(i, j);
        const Complex& v = c(j);
        re -= static_cast<long double>(a.real()) * v.real() -
              static_cast<long double>(a.imag()) * v.imag();
        im -= static_cast<long double>(a.real()) * v.imag() +
              static_cast<long double>(a.imag()) * v.real();
      }
      r(i) = Complex(static_cast<double>(re), static_cast<double>(im));
    }
    return r;
  };
  for (int pass = 0; pass < 2; ++pass)
    coeffs += least_squares_complex(design, residual_ld(coeffs), spec.rank_tol).coefficients;

  FitResult fit;
  fit.condition = lsq.condition_estimate;
  fit.condition_warning = lsq.condition_estimate > 1e12;
  fit.terms.resize(cols);
  for (int j = 0; j < cols; ++j) fit.terms[j] = {spec.terms[j], coeffs(j) / scale[j]};
  Vector misfit = design * coeffs - rhs;
  fit.max_residual = misfit.cwiseAbs().maxCoeff();
  return fit;
}

std::vector<ComparisonRow> compare_to_prediction(const FitResult& fit,
                                                 const AsymptoticPrediction& pred) {
  std::vector<ComparisonRow> rows;
  for (const auto& p : pred.terms) {
    const FitTermResult* match = nullptr;
    for (const auto& f : fit.terms)
      if (f.term.label == p.label) match = &f;
    if (!match) throw ModelError("compare_to_prediction: no fitted term labelled '" +
                                 p.label + "'");
    double denom = std::max(std::abs(p.amplitude), 1e-300);
    rows.push_back({p.label, match->amplitude, p.amplitude,
                    std::abs(match->amplitude - p.amplitude) / denom});
  }
  return rows;
}

}  // namespace gsk
