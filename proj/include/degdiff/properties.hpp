// Computable functionals and pass/fail checks for the discrete estimates the
// scheme satisfies: conservation, L1 contraction, BV nonincrease, entropy
// inequalities, time continuity, dissipation bounds.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "degdiff/solver.hpp"

namespace degdiff {

struct PropertyReport {
    std::string name;
    std::vector<double> per_step_values;
    double worst_violation = 0.0;
    bool passed = false;
    double tolerance = 0.0;
};

PropertyReport make_report(std::string name, std::vector<double> per_step, double tol);

struct EntropyFamily {
    std::string name;
    std::function<double(double)> eta;
    std::function<double(double)> eta_prime;

    static EntropyFamily quadratic();
    // Smoothed Kruzkov entropy |u-c|_eps; eps is typically dx.
    static EntropyFamily kruzkov(double c, double eps);
    // Convexity is validated by sampling eta_second on [lo, hi]; rejects
    // non-convex input.
    static EntropyFamily custom(std::string name, std::function<double(double)> eta,
                                std::function<double(double)> eta_prime,
                                const std::function<double(double)>& eta_second,
                                double lo = -4.0, double hi = 4.0);
};

// dx-weighted norms; bv_seminorm is the unweighted total variation.
double mass(const GridFunction& u);
double l1_norm(const GridFunction& u);
double l2_norm(const GridFunction& u);
std::pair<double, double> linf_bounds(const GridFunction& u);
double bv_seminorm(const GridFunction& u);

// Per-step check tolerance absorbing Newton residual slack.
double default_check_tolerance(const Grid& grid, double newton_tol);

// worst |mass(u^n) - mass(u^0)|.
PropertyReport check_conservation(const Trajectory& traj, double tol);

// sum_j |u^n_j - v^n_j| nonincreasing in n.
PropertyReport check_l1_contraction(const Trajectory& a, const Trajectory& b, double tol);

// BV(u^n) <= BV(u^0) for all n.
PropertyReport check_bv_nonincrease(const Trajectory& traj, double tol);

// min u^0 - tol <= u^n_j <= max u^0 + tol for all n, j.
PropertyReport check_max_principle(const Trajectory& traj, double tol);

// Per step,
//   R_n = sum eta(u^{n+1}) + lambda sum k_{j+1/2} (D+ eta'(u^{n+1}))(D+ G(u^{n+1}))
//         - sum eta(u^n) <= tol.
PropertyReport check_entropy_inequality(const Trajectory& traj, const EntropyFamily& family,
                                        const CoefficientField& k,
                                        const NonlinearityModel& model, double tol);

// The dissipation sum above is nonnegative on its own (eta convex, G monotone).
PropertyReport check_entropy_dissipation_nonneg(const Trajectory& traj,
                                                const EntropyFamily& family,
                                                const CoefficientField& k,
                                                const NonlinearityModel& model, double tol);

// sum_j |u^{n+1}_j - u^n_j| <= sum_j |u^0_j - u^{-1}_j| for all n, where u^{-1}
// is the explicit back step.
PropertyReport check_time_continuity(const Trajectory& traj, const CoefficientField& k,
                                     const NonlinearityModel& model, double tol,
                                     double mu = 0.0);

// dx * sum_j |D+(k_{j-1/2} D- G(u_j)) / dx^2| with zero flux at the boundary.
double flux_bv(const GridFunction& u, const CoefficientField& k,
               const NonlinearityModel& model);

// dt*dx * sum_{n>=1} sum_j k_{j+1/2} (D+ G(u^n_j)/dx)^2.
double dissipation_budget(const Trajectory& traj, const CoefficientField& k,
                          const NonlinearityModel& model);

// Per-step increment of the budget for state u^n (n >= 1).
double dissipation_increment(const GridFunction& u, const CoefficientField& k,
                             const NonlinearityModel& model, double dt);

// max over sampled cell pairs of [dt * sum_n |G(u^n_i)-G(u^n_j)|] / (T sqrt|x_i-x_j|).
// Pairs are deterministic: dyadic strides 1,2,4,... with the pair_count
// budget split evenly across strides.
double holder_modulus(const Trajectory& traj, const NonlinearityModel& model,
                      int pair_count);

// |dx-weighted L2 drop - (2*dissipation_budget + time-difference term)|;
// zero up to Newton slack when G = id (discrete energy identity).
double energy_identity_gap(const Trajectory& traj, const CoefficientField& k,
                           const NonlinearityModel& model);

}  // namespace degdiff
