#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gsk/common.hpp"

namespace gsk {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Eigenvalues of a general complex matrix (Schur form, no vectors).
std::vector<Complex> eigenvalues(const Matrix& a);

struct LeastSquaresResult {
  Vector coefficients;
  double residual_norm;      // ||A c - b||_2
  double condition_estimate; // |r_max| / |r_min| from the QR diagonal
};

/// Minimum-norm solution of min ||A c - b||_2 by column-pivoted Householder
/// QR, rows >= columns.  Columns whose pivot falls below rank_tol relative
/// to the leading pivot raise a NumericError naming the offending columns.
LeastSquaresResult least_squares_complex(const Matrix& a, const Vector& b,
                                         double rank_tol = 1e-10);

}  // namespace gsk
