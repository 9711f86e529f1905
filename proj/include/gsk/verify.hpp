#pragma once

#include <string>
#include <vector>

#include "gsk/model.hpp"

namespace gsk {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Run the named invariant suite ("kernel", "asymptotics", "cyclic",
/// "xdep", or "all") against the given model (fixture or built-in smoke
/// model).  Each check returns pass/fail plus a measured quantity.
std::vector<CheckResult> run_suite(const std::string& suite, const ModelSpec& model);

/// The standing smoke-test model: p = lambda, F = 1 + 0.2 lambda^2,
/// g = 0.3 sin lambda, q = 1, gamma = 0.1.
ModelSpec smoke_model(Complex gamma = Complex(0.1, 0.0));

/// Tame random models for property checks: gentle polynomial p with p' > 0,
/// bounded F and g, |gamma| <= 0.2.
ModelSpec random_tame_model(unsigned seed);

}  // namespace gsk
