// Command-line front end: simulation runs, property audits, refinement and
// vanishing-viscosity studies. Exit codes: 0 ok, 2 config error, 3 solver
// non-convergence, 4 property/study failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "degdiff/config.hpp"
#include "degdiff/convergence.hpp"
#include "degdiff/csv.hpp"
#include "degdiff/properties.hpp"
#include "degdiff/solver.hpp"

namespace fs = std::filesystem;
using namespace degdiff;

namespace {

constexpr const char* kVersion = "degdiff 1.0.0";

struct CommonOpts {
    std::string config_path;
    std::string preset_name;
    std::string out_dir = ".";
    double newton_tol = 0.0;  // 0 = use config/default
    unsigned long seed = 0;
};

RunSetup load_setup(const CommonOpts& opts) {
    if (opts.config_path.empty() == opts.preset_name.empty())
        throw ConfigError("exactly one of --config and --preset is required");
    RunSetup setup = opts.config_path.empty() ? preset(opts.preset_name)
                                              : parse_config_file(opts.config_path);
    if (opts.newton_tol > 0.0) {
        setup.newton_tol = opts.newton_tol;
        setup.paper_tolerance = false;
    }
    return setup;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' line endings everywhere
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

void write_snapshot(const fs::path& path, const GridFunction& u) {
    auto out = open_out(path);
    out << "x_center,u\n";
    for (int j = 0; j < u.grid.cell_count(); ++j)
        out << format_double(u.grid.center(j)) << ',' << format_double(u.values[j]) << '\n';
}

void write_functionals(const fs::path& path, const Trajectory& traj,
                       const CoefficientField& k, const NonlinearityModel& model) {
    auto out = open_out(path);
    out << "t,mass,l1,l2,linf_min,linf_max,bv,dissipation_increment\n";
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const auto& u = traj.states[n];
        auto [lo, hi] = linf_bounds(u);
        double incr = n == 0 ? 0.0 : dissipation_increment(u, k, model, traj.dt);
        out << format_double(traj.times[n]) << ',' << format_double(mass(u)) << ','
            << format_double(l1_norm(u)) << ',' << format_double(l2_norm(u)) << ','
            << format_double(lo) << ',' << format_double(hi) << ','
            << format_double(bv_seminorm(u)) << ',' << format_double(incr) << '\n';
    }
}

void write_trajectory(const fs::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t";
    for (int j = 0; j < traj.grid.cell_count(); ++j) out << ",u" << j;
    out << '\n';
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        out << format_double(traj.times[n]);
        for (double v : traj.states[n].values) out << ',' << format_double(v);
        out << '\n';
    }
}

Trajectory read_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open trajectory file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("trajectory file is empty");
    Trajectory traj;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw ConfigError("trajectory file needs at least two states");
    const int cells = static_cast<int>(rows[0].size()) - 1;
    if (cells < 2) throw ConfigError("trajectory file needs at least two cells");
    traj.grid = build_grid(cells - 1);
    traj.dt = rows[1][0] - rows[0][0];
    for (const auto& row : rows) {
        traj.times.push_back(row[0]);
        traj.states.emplace_back(traj.grid,
                                 std::vector<double>(row.begin() + 1, row.end()));
    }
    return traj;
}

nlohmann::json setup_echo(const RunSetup& setup, const CommonOpts& opts,
                          const SolverConfig& cfg) {
    nlohmann::json echo;
    echo["source"] = opts.config_path.empty() ? "preset:" + opts.preset_name
                                              : opts.config_path;
    echo["n"] = setup.n;
    echo["dt"] = cfg.dt;
    echo["mesh_ratio"] = cfg.mesh_ratio;
    echo["t_end"] = setup.t_end;
    echo["snapshots"] = setup.snapshots;
    echo["newton_tol"] = cfg.newton_tol;
    if (opts.preset_name == "paper-example")
        echo["notes"] = {"the paper-example preset assumes k = 1"};
    return echo;
}

int cmd_run(const CommonOpts& opts, bool save_trajectory) {
    RunSetup setup = load_setup(opts);
    Problem problem = setup.spec.instantiate(setup.n);
    SolverConfig cfg = setup.make_config(problem.grid);

    fs::create_directories(opts.out_dir);
    auto t0 = std::chrono::steady_clock::now();
    Trajectory traj = run(problem, cfg, setup.t_end);
    auto wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json manifest;
    manifest["config"] = setup_echo(setup, opts, cfg);
    manifest["version"] = kVersion;
    manifest["wall_time_seconds"] = wall;
    manifest["step_count"] = traj.step_count();
    manifest["snapshots"] = nlohmann::json::array();
    for (std::size_t i = 0; i < setup.snapshots.size(); ++i) {
        double t = setup.snapshots[i];
        std::string name =
            "snapshot_" + std::to_string(i) + "_t" + format_double(t) + ".csv";
        write_snapshot(fs::path(opts.out_dir) / name, traj.state_at(t));
        manifest["snapshots"].push_back({{"t", t}, {"path", name}});
    }
    write_functionals(fs::path(opts.out_dir) / "functionals.csv", traj, problem.k,
                      problem.model);
    if (save_trajectory)
        write_trajectory(fs::path(opts.out_dir) / "trajectory.csv", traj);
    open_out(fs::path(opts.out_dir) / "manifest.json") << manifest.dump(2) << '\n';
    return 0;
}

void append_report(std::ofstream& out, const PropertyReport& r) {
    for (std::size_t n = 0; n < r.per_step_values.size(); ++n)
        out << r.name << ',' << n << ',' << format_double(r.per_step_values[n]) << ','
            << format_double(r.tolerance) << ','
            << (r.per_step_values[n] <= r.tolerance ? "true" : "false") << '\n';
}

int cmd_verify(const CommonOpts& opts, const std::string& replay_path) {
    RunSetup setup = load_setup(opts);
    Problem problem = setup.spec.instantiate(setup.n);
    SolverConfig cfg = setup.make_config(problem.grid);
    Trajectory traj = replay_path.empty() ? run(problem, cfg, setup.t_end)
                                          : read_trajectory(replay_path);
    if (!(traj.grid == problem.grid))
        throw ConfigError("replayed trajectory grid does not match config");

    const double tol = default_check_tolerance(problem.grid, cfg.newton_tol);
    std::vector<PropertyReport> reports;
    reports.push_back(check_conservation(traj, tol));
    reports.push_back(check_bv_nonincrease(traj, tol));
    reports.push_back(check_max_principle(traj, tol));
    reports.push_back(check_time_continuity(traj, problem.k, problem.model, tol));
    reports.push_back(check_entropy_inequality(traj, EntropyFamily::quadratic(), problem.k,
                                               problem.model, tol));
    reports.push_back(check_entropy_dissipation_nonneg(traj, EntropyFamily::quadratic(),
                                                       problem.k, problem.model, tol));
    auto [lo, hi] = linf_bounds(traj.states.front());
    for (int i = 0; i < 10; ++i) {
        double c = lo + (hi - lo) * i / 9.0;
        reports.push_back(check_entropy_inequality(
            traj, EntropyFamily::kruzkov(c, problem.grid.dx), problem.k, problem.model, tol));
    }

    // Randomized L1-contraction sweep on short companion runs.
    if (replay_path.empty()) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> dist(std::min(lo, -1.0), std::max(hi, 1.0));
        SolverConfig sweep_cfg = cfg;
        const long sweep_steps = 100;
        for (int pair = 0; pair < 2; ++pair) {
            std::vector<double> a(problem.grid.cell_count()), b(a.size());
            for (auto& x : a) x = dist(rng);
            for (auto& x : b) x = dist(rng);
            Problem pa = problem, pb = problem;
            pa.u0 = GridFunction(problem.grid, a);
            pb.u0 = GridFunction(problem.grid, b);
            Trajectory ta = run(pa, sweep_cfg, sweep_steps * sweep_cfg.dt);
            Trajectory tb = run(pb, sweep_cfg, sweep_steps * sweep_cfg.dt);
            PropertyReport r = check_l1_contraction(ta, tb, tol);
            r.name += "[random pair " + std::to_string(pair) + "]";
            reports.push_back(std::move(r));
        }
    }

    fs::create_directories(opts.out_dir);
    auto out = open_out(fs::path(opts.out_dir) / "report.csv");
    out << "name,step,value,tolerance,passed\n";
    bool all_passed = true;
    for (const auto& r : reports) {
        append_report(out, r);
        if (!r.passed) {
            all_passed = false;
            std::cerr << "FAILED: " << r.name << " worst violation "
                      << format_double(r.worst_violation) << " > tolerance "
                      << format_double(r.tolerance) << '\n';
        }
    }
    return all_passed ? 0 : 4;
}

int cmd_converge(const CommonOpts& opts, const std::vector<int>& levels) {
    RunSetup setup = load_setup(opts);
    double tol = setup.newton_tol.value_or(1e-12);
    RefinementStudy study =
        refinement_study(setup.spec, levels, setup.t_end, setup.snapshots, tol);

    fs::create_directories(opts.out_dir);
    auto out = open_out(fs::path(opts.out_dir) / "refinement.csv");
    out << "level,snapshot_time,l1_difference\n";
    for (std::size_t m = 0; m + 1 < study.levels.size(); ++m)
        for (std::size_t s = 0; s < study.snapshot_times.size(); ++s)
            out << study.levels[m] << ',' << format_double(study.snapshot_times[s]) << ','
                << format_double(study.l1_differences[m][s]) << '\n';
    for (std::size_t m = 0; m < study.observed_orders.size(); ++m)
        std::cout << "observed order (levels " << study.levels[m] << " -> "
                  << study.levels[m + 2] << "): " << format_double(study.observed_orders[m])
                  << '\n';
    if (!differences_decreasing(study)) {
        std::cerr << "FAILED: refinement differences are not decreasing\n";
        return 4;
    }
    return 0;
}

int cmd_viscosity(const CommonOpts& opts, const std::vector<double>& mu_list) {
    RunSetup setup = load_setup(opts);
    double tol = setup.newton_tol.value_or(1e-12);
    auto points = viscosity_study(setup.spec, setup.n, mu_list, setup.t_end, tol);

    fs::create_directories(opts.out_dir);
    auto out = open_out(fs::path(opts.out_dir) / "viscosity.csv");
    out << "mu,snapshot_time,l1_distance\n";
    for (const auto& p : points)
        out << format_double(p.mu) << ',' << format_double(setup.t_end) << ','
            << format_double(p.l1_distance) << '\n';
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].l1_distance < points[i - 1].l1_distance)) {
            std::cerr << "FAILED: viscosity distances are not decreasing\n";
            return 4;
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Implicit finite-difference solver for 1D degenerate nonlinear diffusion"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    bool save_trajectory = false;
    std::string replay_path;
    std::string levels_arg = "64,128,256";
    std::string mu_arg = "0.1,0.01,0.001";

    auto add_common = [&](CLI::App* sub, bool with_config = true) {
        if (with_config) {
            sub->add_option("--config", opts.config_path, "problem definition JSON");
            sub->add_option("--preset", opts.preset_name, "builtin preset name");
        }
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--newton-tol", opts.newton_tol, "Newton tolerance override");
        sub->add_option("--seed", opts.seed, "seed for randomized property sweeps");
    };

    auto* run_cmd = app.add_subcommand("run", "advance the scheme and write CSV output");
    add_common(run_cmd);
    run_cmd->add_flag("--save-trajectory", save_trajectory, "write the full state history");

    auto* verify_cmd = app.add_subcommand("verify", "run every property check");
    add_common(verify_cmd);
    verify_cmd->add_option("--replay", replay_path, "check a saved trajectory.csv instead");

    auto* converge_cmd = app.add_subcommand("converge", "grid refinement study");
    add_common(converge_cmd);
    converge_cmd->add_option("--levels", levels_arg, "comma-separated N values");

    auto* visc_cmd = app.add_subcommand("viscosity", "vanishing viscosity study");
    add_common(visc_cmd);
    visc_cmd->add_option("--mu", mu_arg, "comma-separated decreasing viscosities");

    auto* example_cmd = app.add_subcommand("example", "run the paper-example preset");
    add_common(example_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(opts, save_trajectory);
        if (verify_cmd->parsed()) return cmd_verify(opts, replay_path);
        if (converge_cmd->parsed()) {
            std::vector<int> levels;
            std::stringstream ss(levels_arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) levels.push_back(std::stoi(tok));
            return cmd_converge(opts, levels);
        }
        if (visc_cmd->parsed()) {
            std::vector<double> mus;
            std::stringstream ss(mu_arg);
            std::string tok;
            while (std::getline(ss, tok, ',')) mus.push_back(std::stod(tok));
            return cmd_viscosity(opts, mus);
        }
        if (example_cmd->parsed()) {
            opts.preset_name = "paper-example";
            return cmd_run(opts, save_trajectory);
        }
    } catch (const NonConvergence& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
