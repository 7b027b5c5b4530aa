#include "degdiff/convergence.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "degdiff/properties.hpp"

namespace degdiff {

GridFunction restrict_to_coarse(const GridFunction& fine, const Grid& coarse) {
    if (fine.grid.cell_count() != 2 * coarse.cell_count())
        throw std::invalid_argument("restrict_to_coarse: grids are not nested");
    std::vector<double> vals(coarse.cell_count());
    for (int j = 0; j < coarse.cell_count(); ++j)
        vals[j] = 0.5 * (fine.values[2 * j] + fine.values[2 * j + 1]);
    return GridFunction(coarse, std::move(vals));
}

namespace {

double l1_distance(const GridFunction& a, const GridFunction& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j)
        s += std::abs(a.values[j] - b.values[j]);
    return s * a.grid.dx;
}

Trajectory run_level(const ProblemSpec& spec, int n, double t_end, double newton_tol,
                     double mu = 0.0) {
    Problem p = spec.instantiate(n);
    SolverConfig cfg = spec.make_config(p.grid);
    cfg.newton_tol = newton_tol;
    return run(p, cfg, t_end, mu);
}

}  // namespace

RefinementStudy refinement_study(const ProblemSpec& spec, const std::vector<int>& levels,
                                 double t_end, const std::vector<double>& snapshot_times,
                                 double newton_tol) {
    if (levels.size() < 2)
        throw std::invalid_argument("refinement_study needs at least two levels");
    for (std::size_t m = 0; m + 1 < levels.size(); ++m)
        if (levels[m + 1] + 1 != 2 * (levels[m] + 1))
            throw std::invalid_argument("refinement levels must satisfy N+1 doubling");
    if (!spec.resolution_independent())
        throw std::invalid_argument(
            "refinement_study requires closure-based k and u0 (not arrays)");

    std::vector<std::future<Trajectory>> futures;
    futures.reserve(levels.size());
    for (int n : levels)
        futures.push_back(std::async(std::launch::async, run_level, std::cref(spec), n, t_end,
                                     newton_tol, 0.0));
    std::vector<Trajectory> runs;
    runs.reserve(levels.size());
    for (auto& f : futures) runs.push_back(f.get());

    RefinementStudy study;
    study.levels = levels;
    study.snapshot_times = snapshot_times;
    for (std::size_t m = 0; m + 1 < levels.size(); ++m) {
        std::vector<double> diffs;
        for (double t : snapshot_times) {
            GridFunction restricted =
                restrict_to_coarse(runs[m + 1].state_at(t), runs[m].grid);
            diffs.push_back(l1_distance(restricted, runs[m].state_at(t)));
        }
        study.l1_differences.push_back(std::move(diffs));
    }
    for (std::size_t m = 0; m + 1 < study.l1_differences.size(); ++m) {
        double coarse = study.l1_differences[m].back();
        double fine = study.l1_differences[m + 1].back();
        study.observed_orders.push_back(fine > 0.0 ? std::log2(coarse / fine)
                                                   : std::numeric_limits<double>::infinity());
    }
    return study;
}

bool differences_decreasing(const RefinementStudy& study, double floor) {
    for (std::size_t s = 0; s < study.snapshot_times.size(); ++s)
        for (std::size_t m = 0; m + 1 < study.l1_differences.size(); ++m) {
            double coarse = study.l1_differences[m][s];
            double fine = study.l1_differences[m + 1][s];
            if (coarse <= floor && fine <= floor) continue;
            if (!(fine < coarse)) return false;
        }
    return true;
}

std::vector<StabilityPoint> stability_experiment(const GridFunction& u0,
                                                 const GridFunction& v0,
                                                 const NonlinearityModel& model,
                                                 const CoefficientField& k,
                                                 const SolverConfig& cfg, double t_end) {
    if (!(u0.grid == v0.grid))
        throw std::invalid_argument("stability_experiment: grids differ");
    const double d0 = l1_distance(u0, v0);
    if (d0 == 0.0)
        throw std::invalid_argument("stability_experiment: identical initial data");

    const long steps = static_cast<long>(std::ceil(t_end / cfg.dt - 1e-9));
    std::vector<StabilityPoint> out;
    out.push_back({0.0, 1.0});
    GridFunction u = u0, v = v0;
    for (long n = 0; n < steps; ++n) {
        u = newton_step_solve(u, cfg, k, model).first;
        v = newton_step_solve(v, cfg, k, model).first;
        out.push_back({(n + 1) * cfg.dt, l1_distance(u, v) / d0});
    }
    return out;
}

std::vector<ViscosityPoint> viscosity_study(const ProblemSpec& spec, int n,
                                            const std::vector<double>& mu_list, double t_end,
                                            double newton_tol) {
    if (mu_list.empty()) throw std::invalid_argument("viscosity_study: empty mu list");
    for (std::size_t i = 0; i < mu_list.size(); ++i) {
        if (!(mu_list[i] > 0.0))
            throw std::invalid_argument("viscosity_study: mu values must be positive");
        if (i > 0 && !(mu_list[i] < mu_list[i - 1]))
            throw std::invalid_argument("viscosity_study: mu values must be decreasing");
    }

    std::vector<std::future<Trajectory>> futures;
    futures.push_back(std::async(std::launch::async, run_level, std::cref(spec), n, t_end,
                                 newton_tol, 0.0));
    for (double mu : mu_list)
        futures.push_back(std::async(std::launch::async, run_level, std::cref(spec), n, t_end,
                                     newton_tol, mu));
    Trajectory reference = futures[0].get();
    std::vector<ViscosityPoint> out;
    for (std::size_t i = 0; i < mu_list.size(); ++i) {
        Trajectory t = futures[i + 1].get();
        out.push_back({mu_list[i], l1_distance(t.state_at(t_end), reference.state_at(t_end))});
    }
    return out;
}

}  // namespace degdiff
