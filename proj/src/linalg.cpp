#include "gsk/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <limits>
#include <string>

namespace gsk {

std::vector<Complex> eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols()) throw NumericError("eigenvalues: matrix must be square");
  Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw NumericError("eigenvalue iteration failed to converge");
  const auto& t = schur.matrixT();
  std::vector<Complex> eig(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) eig[i] = t(i, i);
  return eig;
}

LeastSquaresResult least_squares_complex(const Matrix& a, const Vector& b,
                                         double rank_tol) {
  if (a.rows() < a.cols())
    throw NumericError("least_squares_complex: needs rows >= columns");
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  const auto& r = qr.matrixR();
  const Eigen::Index n = a.cols();
  double rmax = 0.0, rmin = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    double d = std::abs(r(k, k));
    rmax = std::max(rmax, d);
    if (k == 0 || d < rmin) rmin = d;
  }
  std::string offenders;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(r(k, k)) < rank_tol * rmax) {
      if (!offenders.empty()) offenders += ", ";
      offenders += std::to_string(qr.colsPermutation().indices()(k));
    }
  }
  if (!offenders.empty())
    throw NumericError("least_squares_complex: rank-deficient design, columns {" +
                       offenders + "}");

  LeastSquaresResult res;
  res.coefficients = qr.solve(b);
  res.residual_norm = (a * res.coefficients - b).norm();
  res.condition_estimate = rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity();
  return res;
}

}  // namespace gsk
