#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gsk {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline const Complex kI{0.0, 1.0};

/// Model-level violation: bad input file, broken invariant of a ModelSpec,
/// malformed expression text. CLI maps this to exit code 2.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical precondition failure: spectral radius too large, branch-cut
/// violation, gamma pole, non-convergent quadrature. CLI exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression syntax error with the byte offset of the offending token.
struct ParseError : ModelError {
  ParseError(const std::string& msg, std::size_t off)
      : ModelError(msg + " at offset " + std::to_string(off)), offset(off) {}
  std::size_t offset;
};

}  // namespace gsk
