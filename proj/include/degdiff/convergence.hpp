// Experimental harness: grid-refinement Cauchy studies, the L1 stability
// experiment, and vanishing-viscosity studies.

#pragma once

#include <vector>

#include "degdiff/config.hpp"
#include "degdiff/solver.hpp"

namespace degdiff {

struct RefinementStudy {
    std::vector<int> levels;
    std::vector<double> snapshot_times;
    // per consecutive level pair, per snapshot: L1 distance after restricting
    // the finer solution to the coarser grid.
    std::vector<std::vector<double>> l1_differences;
    // log2 ratios of consecutive differences at the final snapshot.
    std::vector<double> observed_orders;
};

// Cell-averaging restriction; requires fine cells to nest exactly in coarse
// ones (N+1 doubling). Mass-exact.
GridFunction restrict_to_coarse(const GridFunction& fine, const Grid& coarse);

// Levels must be strictly increasing with N_{m+1}+1 = 2*(N_m+1). Runs execute
// in parallel.
RefinementStudy refinement_study(const ProblemSpec& spec, const std::vector<int>& levels,
                                 double t_end, const std::vector<double>& snapshot_times,
                                 double newton_tol = 1e-12);

// True when consecutive differences strictly decrease at every snapshot
// (pairs that are both below floor count as converged).
bool differences_decreasing(const RefinementStudy& study, double floor = 1e-13);

struct StabilityPoint {
    double t = 0.0;
    double ratio = 0.0;  // ||u^n - v^n||_L1 / ||u^0 - v^0||_L1
};

// Evolves two initial states under the same scheme and tracks the L1
// distance ratio; the discrete contraction gives ratio <= 1 (the e^{Ct}
// stability bound with C = 0). Identical initial data is rejected.
std::vector<StabilityPoint> stability_experiment(const GridFunction& u0,
                                                 const GridFunction& v0,
                                                 const NonlinearityModel& model,
                                                 const CoefficientField& k,
                                                 const SolverConfig& cfg, double t_end);

struct ViscosityPoint {
    double mu = 0.0;
    double l1_distance = 0.0;  // to the mu = 0 run at t_end
};

// mu_list must be positive and strictly decreasing. Runs execute in parallel.
std::vector<ViscosityPoint> viscosity_study(const ProblemSpec& spec, int n,
                                            const std::vector<double>& mu_list, double t_end,
                                            double newton_tol = 1e-12);

}  // namespace degdiff
