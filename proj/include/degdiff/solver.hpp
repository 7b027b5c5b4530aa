// Implicit scheme for u_t = (k G(u)_x)_x:
//   u^{n+1}_j - lambda * D+( k_{j-1/2} D-( G(u^{n+1}_j) + mu*u^{n+1}_j ) ) = u^n_j
// with zero flux through the faces x=0 and x=1, solved per step by damped
// Newton iteration on a tridiagonal Jacobian. mu >= 0 is an optional
// vanishing-viscosity term; mu = 0 is the plain scheme.

#pragma once

#include <stdexcept>
#include <vector>

#include "degdiff/model.hpp"
#include "degdiff/tridiag.hpp"

namespace degdiff {

struct StepDiagnostics {
    int newton_iters = 0;
    double final_residual_norm = 0.0;
    bool damping_used = false;
};

struct Trajectory {
    Grid grid;
    double dt = 0.0;
    std::vector<double> times;             // t_n = n*dt
    std::vector<GridFunction> states;      // states[n] = u^n
    std::vector<StepDiagnostics> diagnostics;  // diagnostics[n] for step n-1 -> n

    std::size_t step_count() const { return states.empty() ? 0 : states.size() - 1; }
    // Piecewise-constant-in-time convention: the value on [t_n, t_{n+1}) is u^n.
    const GridFunction& state_at(double t) const;
};

class NonConvergence : public std::runtime_error {
public:
    NonConvergence(std::string msg, GridFunction last, double residual_norm,
                   long step_index = -1)
        : std::runtime_error(std::move(msg)),
          last_iterate(std::move(last)),
          residual_norm(residual_norm),
          step_index(step_index) {}

    GridFunction last_iterate;
    double residual_norm;
    long step_index;
};

// F_j = u_j - lambda*[flux_{j+1/2} - flux_{j-1/2}] - prev_j with
// flux_{j+1/2} = k_{j+1/2}*(G(u_{j+1})-G(u_j)) + mu*(u_{j+1}-u_j)
// and zero flux through the outermost faces.
std::vector<double> residual(const GridFunction& u, const GridFunction& prev, double lambda,
                             const CoefficientField& k, const NonlinearityModel& model,
                             double mu = 0.0);

TridiagonalMatrix jacobian(const GridFunction& u, double lambda, const CoefficientField& k,
                           const NonlinearityModel& model, double mu = 0.0);

// Solves one implicit step. Starts from prev (or initial_guess when given);
// on residual stagnation the damping factor is halved down to 2^-8. Throws
// NonConvergence when newton_max_iter is exhausted.
std::pair<GridFunction, StepDiagnostics> newton_step_solve(const GridFunction& prev,
                                                           const SolverConfig& cfg,
                                                           const CoefficientField& k,
                                                           const NonlinearityModel& model,
                                                           double mu = 0.0,
                                                           const GridFunction* initial_guess =
                                                               nullptr);

// Explicit step in the negative t direction:
// u^{-1}_j = u^0_j - lambda * D+(k_{j-1/2} D- (G(u^0_j) + mu*u^0_j)).
GridFunction back_step(const GridFunction& u0, const SolverConfig& cfg,
                       const CoefficientField& k, const NonlinearityModel& model,
                       double mu = 0.0);

// Advances ceil(t_end/dt) steps; every state is recorded.
Trajectory run(const Problem& problem, const SolverConfig& cfg, double t_end, double mu = 0.0);

double linf_norm(const std::vector<double>& v);

}  // namespace degdiff
