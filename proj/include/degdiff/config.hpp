// Problem definition files (JSON) and built-in presets. Keys:
//   n          cell-count parameter (positive integer)
//   dt         time step, or dt_over_dx (exactly one of the two)
//   t_end      final time
//   G          "clipped_quadratic" | "identity" | [[u, G(u)], ...] table
//   k          positive number, builtin name ("one", "sin_bump"), or array of
//              n+2 face values
//   u0         "paper_sine" (2 sin(2 pi x)), a constant, or array of n+1 cell
//              values
//   snapshots  optional array of times (default {0, t_end})
//   newton_tol optional positive number, or "paper" for 0.1*dx^2
// Unknown keys are rejected.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "degdiff/model.hpp"

namespace degdiff {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resolution-independent problem description; closure-backed fields can be
// instantiated at any n (needed for refinement studies), array-backed fields
// only at the n they were given for.
struct ProblemSpec {
    NonlinearityModel model = NonlinearityModel::identity();
    std::function<double(double)> k_fn;   // either k_fn or k_values
    std::vector<double> k_values;
    std::function<double(double)> u0_fn;  // either u0_fn or u0_values
    std::vector<double> u0_values;
    double dt = 0.0;          // exactly one of dt, dt_over_dx is positive
    double dt_over_dx = 0.0;

    bool resolution_independent() const { return k_values.empty() && u0_values.empty(); }
    Problem instantiate(int n) const;
    SolverConfig make_config(const Grid& grid) const;
};

struct RunSetup {
    ProblemSpec spec;
    int n = 0;
    double t_end = 0.0;
    std::vector<double> snapshots;
    std::optional<double> newton_tol;   // absolute override
    bool paper_tolerance = false;       // newton_tol = "paper"

    SolverConfig make_config(const Grid& grid) const;
};

RunSetup parse_config(const nlohmann::json& j);
RunSetup parse_config_file(const std::string& path);

// Presets: "paper-example" (N=512, dt=0.01*dx, clipped-quadratic G, k=1,
// u0 = 2 sin(2 pi x), t_end=0.2) and "heat" (identity G).
RunSetup preset(const std::string& name);

}  // namespace degdiff
