#include "degdiff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace degdiff {

double linf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

const GridFunction& Trajectory::state_at(double t) const {
    if (states.empty()) throw std::logic_error("state_at on empty trajectory");
    long n = static_cast<long>(std::floor(t / dt + 1e-9));
    n = std::clamp(n, 0L, static_cast<long>(states.size()) - 1);
    return states[static_cast<std::size_t>(n)];
}

std::vector<double> residual(const GridFunction& u, const GridFunction& prev, double lambda,
                             const CoefficientField& k, const NonlinearityModel& model,
                             double mu) {
    const int cells = u.grid.cell_count();
    if (prev.grid.cell_count() != cells)
        throw std::invalid_argument("residual: u and prev on different grids");
    std::vector<double> G(cells);
    for (int j = 0; j < cells; ++j) G[j] = model.eval(u.values[j]);
    std::vector<double> F(cells);
    for (int j = 0; j < cells; ++j) {
        double flux_right = 0.0, flux_left = 0.0;
        if (j + 1 < cells)
            flux_right = k.face_values[j + 1] * (G[j + 1] - G[j]) +
                         mu * (u.values[j + 1] - u.values[j]);
        if (j > 0)
            flux_left = k.face_values[j] * (G[j] - G[j - 1]) +
                        mu * (u.values[j] - u.values[j - 1]);
        F[j] = u.values[j] - lambda * (flux_right - flux_left) - prev.values[j];
    }
    return F;
}

TridiagonalMatrix jacobian(const GridFunction& u, double lambda, const CoefficientField& k,
                           const NonlinearityModel& model, double mu) {
    const int cells = u.grid.cell_count();
    std::vector<double> dG(cells);
    for (int j = 0; j < cells; ++j) dG[j] = model.deriv(u.values[j]);
    TridiagonalMatrix m;
    m.diag.resize(cells);
    m.sub.resize(cells - 1);
    m.super.resize(cells - 1);
    for (int j = 0; j < cells; ++j) {
        double d = 1.0;
        if (j + 1 < cells) {
            double kr = k.face_values[j + 1];
            d += lambda * (kr * dG[j] + mu);
            m.super[j] = -lambda * (kr * dG[j + 1] + mu);
        }
        if (j > 0) {
            double kl = k.face_values[j];
            d += lambda * (kl * dG[j] + mu);
            m.sub[j - 1] = -lambda * (kl * dG[j - 1] + mu);
        }
        m.diag[j] = d;
    }
    return m;
}

std::pair<GridFunction, StepDiagnostics> newton_step_solve(const GridFunction& prev,
                                                           const SolverConfig& cfg,
                                                           const CoefficientField& k,
                                                           const NonlinearityModel& model,
                                                           double mu,
                                                           const GridFunction* initial_guess) {
    const double tol = cfg.newton_tol * std::max(1.0, linf_norm(prev.values));
    const double lambda = cfg.mesh_ratio;

    GridFunction u = initial_guess ? *initial_guess : prev;
    std::vector<double> F = residual(u, prev, lambda, k, model, mu);
    double rnorm = linf_norm(F);
    StepDiagnostics diag;

    while (rnorm > tol) {
        if (diag.newton_iters >= cfg.newton_max_iter) {
            std::ostringstream msg;
            msg << "Newton failed to reach tol " << tol << " (residual " << rnorm
                << ") in " << cfg.newton_max_iter << " iterations";
            throw NonConvergence(msg.str(), u, rnorm);
        }
        TridiagonalMatrix J = jacobian(u, lambda, k, model, mu);
        std::vector<double> delta = thomas_solve(J, F);

        double factor = cfg.damping;
        GridFunction cand = u;
        std::vector<double> Fc;
        double rc = 0.0;
        while (true) {
            for (std::size_t j = 0; j < u.values.size(); ++j)
                cand.values[j] = u.values[j] - factor * delta[j];
            Fc = residual(cand, prev, lambda, k, model, mu);
            rc = linf_norm(Fc);
            if (rc < rnorm || factor <= 1.0 / 256.0) break;
            factor *= 0.5;
            diag.damping_used = true;
        }
        u = std::move(cand);
        F = std::move(Fc);
        rnorm = rc;
        ++diag.newton_iters;
    }
    diag.final_residual_norm = rnorm;
    return {std::move(u), diag};
}

GridFunction back_step(const GridFunction& u0, const SolverConfig& cfg,
                       const CoefficientField& k, const NonlinearityModel& model, double mu) {
    const std::vector<double> F = residual(u0, u0, cfg.mesh_ratio, k, model, mu);
    // residual(u0, u0, ...) = -lambda*D+(k D- G(u0)); the back step adds it to u0.
    GridFunction out = u0;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] = u0.values[j] + F[j];
    return out;
}

Trajectory run(const Problem& problem, const SolverConfig& cfg, double t_end, double mu) {
    if (!(t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
    const long steps = static_cast<long>(std::ceil(t_end / cfg.dt - 1e-9));
    Trajectory traj;
    traj.grid = problem.grid;
    traj.dt = cfg.dt;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(problem.u0);
    for (long n = 0; n < steps; ++n) {
        try {
            auto [next, diag] = newton_step_solve(traj.states.back(), cfg, problem.k,
                                                  problem.model, mu);
            traj.states.push_back(std::move(next));
            traj.diagnostics.push_back(diag);
            traj.times.push_back((n + 1) * cfg.dt);
        } catch (NonConvergence& e) {
            std::ostringstream msg;
            msg << "step " << n << ": " << e.what();
            throw NonConvergence(msg.str(), std::move(e.last_iterate), e.residual_norm, n);
        }
    }
    return traj;
}

}  // namespace degdiff
