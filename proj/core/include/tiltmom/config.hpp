#pragma once

#include <string>

#include "tiltmom/diagnostics.hpp"
#include "tiltmom/model.hpp"

namespace tiltmom {

// One run configuration, parsed from a single JSON document.  Every knob
// that affects numbers lives here, so a config file fully determines the
// output bytes.
struct RunConfig {
  TailModel model;
  DiagnosticsConfig diagnostics;
  std::string output_prefix = "report";
};

// Parses and validates the config JSON.  Schema (all fields except
// "model" optional):
//   {
//     "model": {"builtin": "weibull", "parameter": 2.0}
//            | {"label": "...", "g": "<expr>", "q": "<expr>",
//               "domain_low": 0.0, "q_eventually_constant": false},
//     "t_grid": {"start": 10.0, "stop": 10000.0, "points": 7},
//     "gaussian_t_grid": [10.0, 100.0, 1000.0],
//     "lambda_grid": [-2.0, ..., 2.0],
//     "j_max": 5,
//     "tolerances": {"quadrature_rel_tol": 1e-10,
//                    "pass_threshold_primary": 0.02,
//                    "pass_threshold_higher": 0.10,
//                    "gaussian_threshold": 0.05,
//                    "trend_epsilon": 0.01},
//     "output_prefix": "report"
//   }
// Throws ConfigError (or ParseError for bad expressions) on any problem.
RunConfig parse_run_config(const std::string& json_text);

}  // namespace tiltmom
