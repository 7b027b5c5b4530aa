#include "degdiff/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

namespace degdiff {

Problem ProblemSpec::instantiate(int n) const {
    Grid grid = build_grid(n);
    CoefficientField k = k_fn ? CoefficientField::from_function(k_fn, grid)
                              : CoefficientField::from_values(k_values, grid);
    GridFunction u0 = u0_fn ? project_initial(u0_fn, grid)
                            : GridFunction(grid, u0_values);
    return Problem{grid, model, std::move(k), std::move(u0)};
}

SolverConfig ProblemSpec::make_config(const Grid& grid) const {
    double step = dt > 0.0 ? dt : dt_over_dx * grid.dx;
    return SolverConfig::from_dt(step, grid);
}

SolverConfig RunSetup::make_config(const Grid& grid) const {
    SolverConfig cfg = spec.make_config(grid);
    if (paper_tolerance)
        cfg.newton_tol = 0.1 * grid.dx * grid.dx;
    else if (newton_tol)
        cfg.newton_tol = *newton_tol;
    return cfg;
}

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what);
}

double positive_number(const json& j, const std::string& key) {
    if (!j.is_number()) bad(key, "expected a number");
    double v = j.get<double>();
    if (!(v > 0.0) || !std::isfinite(v)) bad(key, "must be positive and finite");
    return v;
}

NonlinearityModel parse_G(const json& j) {
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name == "clipped_quadratic") return NonlinearityModel::clipped_quadratic();
        if (name == "identity") return NonlinearityModel::identity();
        bad("G", "unknown builtin '" + name + "'");
    }
    if (j.is_array()) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                bad("G", "table entries must be [u, G(u)] number pairs");
            pts.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        try {
            return NonlinearityModel::from_table(std::move(pts));
        } catch (const std::exception& e) {
            bad("G", e.what());
        }
    }
    bad("G", "expected builtin name or table");
}

void parse_k(const json& j, ProblemSpec& spec) {
    if (j.is_number()) {
        double v = positive_number(j, "k");
        spec.k_fn = [v](double) { return v; };
        return;
    }
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name == "one") {
            spec.k_fn = [](double) { return 1.0; };
            return;
        }
        if (name == "sin_bump") {
            spec.k_fn = [](double x) { return 1.0 + 0.5 * std::sin(std::numbers::pi * x); };
            return;
        }
        bad("k", "unknown builtin '" + name + "'");
    }
    if (j.is_array()) {
        std::vector<double> vals;
        for (const auto& v : j) {
            if (!v.is_number()) bad("k", "array entries must be numbers");
            vals.push_back(v.get<double>());
        }
        spec.k_values = std::move(vals);
        return;
    }
    bad("k", "expected number, builtin name, or face-value array");
}

void parse_u0(const json& j, ProblemSpec& spec) {
    if (j.is_number()) {
        double c = j.get<double>();
        if (!std::isfinite(c)) bad("u0", "must be finite");
        spec.u0_fn = [c](double) { return c; };
        return;
    }
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name == "paper_sine") {
            spec.u0_fn = [](double x) { return 2.0 * std::sin(2.0 * std::numbers::pi * x); };
            return;
        }
        bad("u0", "unknown builtin '" + name + "'");
    }
    if (j.is_array()) {
        std::vector<double> vals;
        for (const auto& v : j) {
            if (!v.is_number()) bad("u0", "array entries must be numbers");
            vals.push_back(v.get<double>());
        }
        spec.u0_values = std::move(vals);
        return;
    }
    bad("u0", "expected number, builtin name, or cell-value array");
}

}  // namespace

RunSetup parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known = {"n",  "dt", "dt_over_dx", "t_end",
                                               "G",  "k",  "u0",         "snapshots",
                                               "newton_tol"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.contains(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
    for (const char* key : {"n", "t_end", "G", "k", "u0"})
        if (!j.contains(key)) throw ConfigError(std::string("missing config key '") + key + "'");

    RunSetup setup;
    if (!j["n"].is_number_integer()) bad("n", "expected a positive integer");
    setup.n = j["n"].get<int>();
    if (setup.n < 1) bad("n", "must be >= 1");

    if (j.contains("dt") == j.contains("dt_over_dx"))
        throw ConfigError("config must set exactly one of 'dt' and 'dt_over_dx'");
    if (j.contains("dt")) setup.spec.dt = positive_number(j["dt"], "dt");
    else setup.spec.dt_over_dx = positive_number(j["dt_over_dx"], "dt_over_dx");

    setup.t_end = positive_number(j["t_end"], "t_end");
    setup.spec.model = parse_G(j["G"]);
    parse_k(j["k"], setup.spec);
    parse_u0(j["u0"], setup.spec);

    if (j.contains("snapshots")) {
        if (!j["snapshots"].is_array()) bad("snapshots", "expected an array of times");
        for (const auto& t : j["snapshots"]) {
            if (!t.is_number()) bad("snapshots", "entries must be numbers");
            double v = t.get<double>();
            if (v < 0.0 || v > setup.t_end + 1e-12) bad("snapshots", "times must lie in [0, t_end]");
            setup.snapshots.push_back(v);
        }
    } else {
        setup.snapshots = {0.0, setup.t_end};
    }

    if (j.contains("newton_tol")) {
        if (j["newton_tol"].is_string()) {
            if (j["newton_tol"].get<std::string>() != "paper")
                bad("newton_tol", "expected a number or \"paper\"");
            setup.paper_tolerance = true;
        } else {
            setup.newton_tol = positive_number(j["newton_tol"], "newton_tol");
        }
    }
    return setup;
}

RunSetup parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

RunSetup preset(const std::string& name) {
    if (name == "paper-example") {
        return parse_config(nlohmann::json{{"n", 512},
                                           {"dt_over_dx", 0.01},
                                           {"t_end", 0.2},
                                           {"G", "clipped_quadratic"},
                                           {"k", 1.0},
                                           {"u0", "paper_sine"},
                                           {"snapshots", {0.0, 0.07, 0.13, 0.2}}});
    }
    if (name == "heat") {
        return parse_config(nlohmann::json{{"n", 128},
                                           {"dt_over_dx", 0.1},
                                           {"t_end", 0.1},
                                           {"G", "identity"},
                                           {"k", 1.0},
                                           {"u0", "paper_sine"},
                                           {"snapshots", {0.0, 0.05, 0.1}}});
    }
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace degdiff
