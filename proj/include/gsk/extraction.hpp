#pragma once

#include <string>
#include <vector>

#include "gsk/asymptotics.hpp"
#include "gsk/model.hpp"

namespace gsk {

struct XGrid {
  double xmin;
  double xmax;
  int count;
};

struct LndetSample {
  double x;
  Complex lndet;
  int order_used;
};

/// ln det over the grid, each point converged by quadrature-order doubling.
/// Points are independent, so the result is identical for any thread count.
std::vector<LndetSample> sample_lndet(const ModelSpec& model, const XGrid& grid,
                                      double tol = 1e-9);

struct FitBasisTerm {
  std::string label;
  double x_power = 0.0;
  int lnx_power = 0;
  int m = 0;  // oscillation index of the block; 0 = smooth
};

/// Fit basis: smooth powers x^a ln^b x plus, optionally, the two
/// oscillating blocks e^{i m omega x} x^{2m(nu_+ + nu_-) - 2}, m = +-1,
/// whose exponents come from the model, not from the fit.
struct FitSpec {
  std::vector<FitBasisTerm> terms;
  Complex omega;
  Complex rho_plus;   // 2 (nu_+ + nu_-)
  Complex rho_minus;  // -2 (nu_+ + nu_-)
  double rank_tol = 1e-10;
};

/// basis = "default": {x, 1, lnx, 1/x, lnx/x, ln^2x/x};
/// basis = "deep": default plus {1/x^2, lnx/x^2, ln^2x/x^2}.
FitSpec make_fit_spec(const ModelSpec& model, const std::string& basis,
                      bool oscillating);

struct FitTermResult {
  FitBasisTerm term;
  Complex amplitude;
};

struct FitResult {
  std::vector<FitTermResult> terms;
  double max_residual;        // max pointwise |fit - sample|
  double condition;           // design condition estimate
  bool condition_warning;     // condition > 1e12
};

/// Complex linear least squares on column-scaled basis evaluations.
/// Requires grid spacing below the Nyquist limit pi/|omega| when an
/// oscillating block is present.
FitResult fit_expansion(const std::vector<LndetSample>& samples, const FitSpec& spec);

struct ComparisonRow {
  std::string label;
  Complex fitted;
  Complex predicted;
  double rel_deviation;
};

/// Side-by-side comparison on matching labels; a predicted label missing
/// from the fit raises a ModelError.
std::vector<ComparisonRow> compare_to_prediction(const FitResult& fit,
                                                 const AsymptoticPrediction& pred);

}  // namespace gsk
