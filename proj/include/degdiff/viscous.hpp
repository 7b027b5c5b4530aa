// Regularized problem u_t = (k G(u)_x + mu u_x)_x with zero total flux at
// the boundary. The viscosity enters the same implicit stencil and Jacobian,
// so mu = 0 reproduces the plain scheme bit for bit.

#pragma once

#include "degdiff/solver.hpp"

namespace degdiff {

struct ViscosityConfig {
    SolverConfig base;
    double mu = 0.0;  // mu >= 0; mu = 0 reduces exactly to the plain scheme
};

std::vector<double> viscous_residual(const GridFunction& u, const GridFunction& prev,
                                     double lambda, const CoefficientField& k,
                                     const NonlinearityModel& model, double mu);

Trajectory viscous_run(const Problem& problem, const ViscosityConfig& cfg, double t_end);

}  // namespace degdiff
