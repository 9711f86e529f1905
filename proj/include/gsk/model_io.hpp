#pragma once

#include <string>

#include "json.hpp"

#include "gsk/model.hpp"

namespace gsk {

/// Parse a model document.  Schema (strict; unknown keys are rejected):
///   {
///     "q": 1.0,
///     "gamma": {"re": 0.1, "im": 0.0},
///     "p": "lambda",
///     "F": "1 + 0.2*lambda^2",            // or phi + flag below
///     "g": "0.3*sin(lambda)",             // optional, default 0
///     "phi": "...",                        // requires the flag
///     "F_is_phi_times_exp_g": true,
///     "quad_order": 128,                   // optional
///     "contour": {"delta": 0.5, "nodes_per_side": 64},   // optional
///     "xdep_family": {"a": "...", "b": "...", "v": "...", "c": 0.05},  // optional
///     "conventions": {"nu0_squared": true, "index_convention": "as_printed"}
///   }
ModelSpec model_from_json(const nlohmann::json& doc);

/// Load and parse a model file; IO failures and schema violations raise
/// ModelError.
ModelSpec load_model(const std::string& path);

}  // namespace gsk
