#pragma once

#include <iosfwd>
#include <string>

#include "refnet/experiments.hpp"

namespace refnet {

/// Parses a JSON scenario. Every key is optional except "groups"; missing
/// parameters keep the calibrated defaults. Unknown keys are rejected.
///
///   {
///     "name": "baseline",
///     "params": {"y": 1, "b": 0.4, "r": 0.012, "delta": 0.036, "eta": 0.72,
///                "gamma": 0.402, "beta": 0.028, "c": 7.188, "phi": 0.048, "d_f": 16},
///     "calibrate": true | {"u_target": 0.044, "market_tightness_inverse": 1.1,
///                          "wage_target": 0.6, "referral_share": 0.5,
///                          "baseline_mean_degree": 22.47, "d_f": 16},
///     "groups": [{"family": "poisson" | "regular" | "zipf",
///                 "mean": 15, "alpha": 2.3, "size": 1e6}],
///     "sweep": {"axis": "phi" | "d_f" | "mean_degree" | <param>, "values": [0, 0.1]},
///     "solver": {"residual_tol": 1e-12, "max_outer_iters": 10000, "damping": 0.5,
///                "initial_u": 0.05, "multistart": 0, "multistart_seed": 1},
///     "gini": "group" | "individual"
///   }
///
/// Throws ConfigError on malformed input or out-of-domain values.
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::string& path);

}  // namespace refnet
