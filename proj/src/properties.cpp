#include "degdiff/properties.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace degdiff {

PropertyReport make_report(std::string name, std::vector<double> per_step, double tol) {
    PropertyReport r;
    r.name = std::move(name);
    r.per_step_values = std::move(per_step);
    r.tolerance = tol;
    r.worst_violation = 0.0;
    for (double v : r.per_step_values) r.worst_violation = std::max(r.worst_violation, v);
    r.passed = r.worst_violation <= tol;
    return r;
}

EntropyFamily EntropyFamily::quadratic() {
    return {"quadratic", [](double u) { return 0.5 * u * u; }, [](double u) { return u; }};
}

EntropyFamily EntropyFamily::kruzkov(double c, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("kruzkov smoothing eps must be positive");
    auto eta = [c, eps](double u) {
        double v = u - c;
        return std::abs(v) <= eps ? v * v / (2.0 * eps) + 0.5 * eps : std::abs(v);
    };
    auto eta_prime = [c, eps](double u) { return std::clamp((u - c) / eps, -1.0, 1.0); };
    return {"kruzkov(c=" + std::to_string(c) + ")", eta, eta_prime};
}

EntropyFamily EntropyFamily::custom(std::string name, std::function<double(double)> eta,
                                    std::function<double(double)> eta_prime,
                                    const std::function<double(double)>& eta_second,
                                    double lo, double hi) {
    const int samples = 2000;
    for (int i = 0; i <= samples; ++i) {
        double u = lo + (hi - lo) * i / samples;
        if (eta_second(u) < -1e-12)
            throw std::invalid_argument("custom entropy is not convex at sample point");
    }
    return {std::move(name), std::move(eta), std::move(eta_prime)};
}

double mass(const GridFunction& u) {
    double s = 0.0;
    for (double x : u.values) s += x;
    return s * u.grid.dx;
}

double l1_norm(const GridFunction& u) {
    double s = 0.0;
    for (double x : u.values) s += std::abs(x);
    return s * u.grid.dx;
}

double l2_norm(const GridFunction& u) {
    double s = 0.0;
    for (double x : u.values) s += x * x;
    return std::sqrt(s * u.grid.dx);
}

std::pair<double, double> linf_bounds(const GridFunction& u) {
    auto [lo, hi] = std::minmax_element(u.values.begin(), u.values.end());
    return {*lo, *hi};
}

double bv_seminorm(const GridFunction& u) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < u.values.size(); ++j)
        s += std::abs(u.values[j + 1] - u.values[j]);
    return s;
}

double default_check_tolerance(const Grid& grid, double newton_tol) {
    return 100.0 * grid.cell_count() * newton_tol;
}

PropertyReport check_conservation(const Trajectory& traj, double tol) {
    if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
    const double m0 = mass(traj.states.front());
    std::vector<double> drift;
    drift.reserve(traj.states.size());
    for (const auto& u : traj.states) drift.push_back(std::abs(mass(u) - m0));
    return make_report("conservation", std::move(drift), tol);
}

namespace {

double l1_diff_unweighted(const GridFunction& a, const GridFunction& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j)
        s += std::abs(a.values[j] - b.values[j]);
    return s;
}

}  // namespace

PropertyReport check_l1_contraction(const Trajectory& a, const Trajectory& b, double tol) {
    if (!(a.grid == b.grid) || a.states.size() != b.states.size())
        throw std::invalid_argument("l1_contraction: mismatched trajectories");
    std::vector<double> growth;
    double prev = l1_diff_unweighted(a.states[0], b.states[0]);
    for (std::size_t n = 1; n < a.states.size(); ++n) {
        double cur = l1_diff_unweighted(a.states[n], b.states[n]);
        growth.push_back(cur - prev);
        prev = cur;
    }
    return make_report("l1_contraction", std::move(growth), tol);
}

PropertyReport check_bv_nonincrease(const Trajectory& traj, double tol) {
    const double bv0 = bv_seminorm(traj.states.front());
    std::vector<double> excess;
    for (std::size_t n = 1; n < traj.states.size(); ++n)
        excess.push_back(bv_seminorm(traj.states[n]) - bv0);
    return make_report("bv_nonincrease", std::move(excess), tol);
}

PropertyReport check_max_principle(const Trajectory& traj, double tol) {
    auto [lo, hi] = linf_bounds(traj.states.front());
    std::vector<double> excess;
    for (std::size_t n = 1; n < traj.states.size(); ++n) {
        auto [a, b] = linf_bounds(traj.states[n]);
        excess.push_back(std::max(lo - a, b - hi));
    }
    return make_report("max_principle", std::move(excess), tol);
}

namespace {

// R_n and its dissipation term for step u^n -> u^{n+1}.
std::pair<double, double> entropy_step(const GridFunction& next, const GridFunction& cur,
                                       const EntropyFamily& fam, const CoefficientField& k,
                                       const NonlinearityModel& model, double lambda) {
    const int cells = next.grid.cell_count();
    double eta_next = 0.0, eta_cur = 0.0, dissip = 0.0;
    for (int j = 0; j < cells; ++j) {
        eta_next += fam.eta(next.values[j]);
        eta_cur += fam.eta(cur.values[j]);
    }
    for (int j = 0; j + 1 < cells; ++j) {
        double dep = fam.eta_prime(next.values[j + 1]) - fam.eta_prime(next.values[j]);
        double dG = model.eval(next.values[j + 1]) - model.eval(next.values[j]);
        dissip += k.face_values[j + 1] * dep * dG;
    }
    return {eta_next + lambda * dissip - eta_cur, dissip};
}

}  // namespace

PropertyReport check_entropy_inequality(const Trajectory& traj, const EntropyFamily& family,
                                        const CoefficientField& k,
                                        const NonlinearityModel& model, double tol) {
    if (traj.states.size() < 2)
        throw std::invalid_argument("entropy check needs at least two states");
    const double lambda = traj.dt / (traj.grid.dx * traj.grid.dx);
    std::vector<double> residuals;
    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n)
        residuals.push_back(entropy_step(traj.states[n + 1], traj.states[n], family, k, model,
                                         lambda)
                                .first);
    return make_report("entropy[" + family.name + "]", std::move(residuals), tol);
}

PropertyReport check_entropy_dissipation_nonneg(const Trajectory& traj,
                                                const EntropyFamily& family,
                                                const CoefficientField& k,
                                                const NonlinearityModel& model, double tol) {
    const double lambda = traj.dt / (traj.grid.dx * traj.grid.dx);
    std::vector<double> neg;
    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n)
        neg.push_back(-entropy_step(traj.states[n + 1], traj.states[n], family, k, model,
                                    lambda)
                           .second);
    return make_report("entropy_dissipation_nonneg[" + family.name + "]", std::move(neg), tol);
}

PropertyReport check_time_continuity(const Trajectory& traj, const CoefficientField& k,
                                     const NonlinearityModel& model, double tol, double mu) {
    SolverConfig cfg;
    cfg.dt = traj.dt;
    cfg.mesh_ratio = traj.dt / (traj.grid.dx * traj.grid.dx);
    const GridFunction um1 = back_step(traj.states.front(), cfg, k, model, mu);
    const double bound = l1_diff_unweighted(traj.states.front(), um1);
    std::vector<double> excess;
    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n)
        excess.push_back(l1_diff_unweighted(traj.states[n + 1], traj.states[n]) - bound);
    return make_report("time_continuity", std::move(excess), tol);
}

double flux_bv(const GridFunction& u, const CoefficientField& k,
               const NonlinearityModel& model) {
    const int cells = u.grid.cell_count();
    const double dx = u.grid.dx;
    std::vector<double> G(cells);
    for (int j = 0; j < cells; ++j) G[j] = model.eval(u.values[j]);
    double s = 0.0;
    for (int j = 0; j < cells; ++j) {
        double fr = j + 1 < cells ? k.face_values[j + 1] * (G[j + 1] - G[j]) : 0.0;
        double fl = j > 0 ? k.face_values[j] * (G[j] - G[j - 1]) : 0.0;
        s += std::abs(fr - fl);
    }
    return s / dx;  // dx * sum |.| / dx^2
}

double dissipation_increment(const GridFunction& u, const CoefficientField& k,
                             const NonlinearityModel& model, double dt) {
    const int cells = u.grid.cell_count();
    const double dx = u.grid.dx;
    double s = 0.0;
    for (int j = 0; j + 1 < cells; ++j) {
        double dG = (model.eval(u.values[j + 1]) - model.eval(u.values[j])) / dx;
        s += k.face_values[j + 1] * dG * dG;
    }
    return dt * dx * s;
}

double dissipation_budget(const Trajectory& traj, const CoefficientField& k,
                          const NonlinearityModel& model) {
    double s = 0.0;
    for (std::size_t n = 1; n < traj.states.size(); ++n)
        s += dissipation_increment(traj.states[n], k, model, traj.dt);
    return s;
}

double holder_modulus(const Trajectory& traj, const NonlinearityModel& model,
                      int pair_count) {
    const int cells = traj.grid.cell_count();
    if (cells < 2) throw std::invalid_argument("holder_modulus needs at least 2 cells");
    const double T = traj.times.back();
    if (!(T > 0.0)) throw std::invalid_argument("holder_modulus needs a positive time span");

    // Precompute G over the trajectory once per sampled cell on demand.
    auto time_l1 = [&](int i, int j) {
        double s = 0.0;
        for (const auto& u : traj.states)
            s += std::abs(model.eval(u.values[i]) - model.eval(u.values[j]));
        return s * traj.dt;
    };

    // Spread the pair budget over all dyadic strides so every separation
    // scale is sampled even on fine grids.
    int stride_levels = 0;
    for (int s = 1; s < cells; s *= 2) ++stride_levels;
    const int per_stride = std::max(1, pair_count / stride_levels);

    double worst = 0.0;
    for (int stride = 1; stride < cells; stride *= 2) {
        const int avail = cells - stride;
        const int take = std::min(per_stride, avail);
        const double dist = stride * traj.grid.dx;
        for (int t = 0; t < take; ++t) {
            int i = static_cast<int>(static_cast<long long>(t) * avail / take);
            worst = std::max(worst, time_l1(i, i + stride) / (T * std::sqrt(dist)));
        }
    }
    return worst;
}

double energy_identity_gap(const Trajectory& traj, const CoefficientField& k,
                           const NonlinearityModel& model) {
    const double dx = traj.grid.dx;
    const auto& first = traj.states.front();
    const auto& last = traj.states.back();
    double drop = 0.0;
    for (std::size_t j = 0; j < first.values.size(); ++j)
        drop += first.values[j] * first.values[j] - last.values[j] * last.values[j];
    drop *= dx;

    double diff_sq = 0.0;
    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n)
        for (std::size_t j = 0; j < first.values.size(); ++j) {
            double d = traj.states[n + 1].values[j] - traj.states[n].values[j];
            diff_sq += d * d;
        }
    diff_sq *= dx;

    return std::abs(drop - 2.0 * dissipation_budget(traj, k, model) - diff_sq);
}

}  // namespace degdiff
