#include "degdiff/viscous.hpp"

#include <stdexcept>

namespace degdiff {

std::vector<double> viscous_residual(const GridFunction& u, const GridFunction& prev,
                                     double lambda, const CoefficientField& k,
                                     const NonlinearityModel& model, double mu) {
    if (mu < 0.0) throw std::invalid_argument("viscosity mu must be nonnegative");
    return residual(u, prev, lambda, k, model, mu);
}

Trajectory viscous_run(const Problem& problem, const ViscosityConfig& cfg, double t_end) {
    if (cfg.mu < 0.0) throw std::invalid_argument("viscosity mu must be nonnegative");
    return run(problem, cfg.base, t_end, cfg.mu);
}

}  // namespace degdiff
