// Problem description for the 1D degenerate diffusion equation
//   u_t = (k(x) G(u)_x)_x  on (0,1),  zero-flux Neumann boundaries,
// discretized on a uniform cell-centered grid.

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace degdiff {

// Uniform cell-centered grid on (0,1): cells j = 0..n, dx = 1/(n+1),
// centers x_j = (j+1/2)dx, faces x_{j-1/2} = j*dx.
struct Grid {
    int n = 0;
    double dx = 0.0;

    int cell_count() const { return n + 1; }
    double center(int j) const { return (j + 0.5) * dx; }
    // face(j) is the left face of cell j; face(n+1) = 1.
    double face(int j) const { return j * dx; }

    bool operator==(const Grid&) const = default;
};

Grid build_grid(int n);

// The nonlinearity G: Lipschitz, nondecreasing, possibly flat on intervals
// (degenerate diffusion). Holds G, G', and an upper bound on G'.
class NonlinearityModel {
public:
    enum class Kind { ClippedQuadratic, Identity, UserTable, UserClosure };

    // G(u) = 0 for u<0, u(2-u) on [0,1], 1 for u>1.
    static NonlinearityModel clipped_quadratic();
    static NonlinearityModel identity();
    // Piecewise-linear G from sorted (u, G(u)) breakpoints, constant outside.
    static NonlinearityModel from_table(std::vector<std::pair<double, double>> points);
    // User closures, validated by dense sampling on [lo, hi].
    static NonlinearityModel from_closures(std::function<double(double)> eval,
                                           std::function<double(double)> deriv,
                                           double lipschitz_const,
                                           double lo = -4.0, double hi = 4.0);

    double eval(double u) const;
    double deriv(double u) const;
    double lipschitz_const() const { return lipschitz_; }
    Kind kind() const { return kind_; }

    // g(u) = int_0^u sqrt(G'(s)) ds, used in entropy-dissipation diagnostics.
    // Adaptive Simpson to 1e-10, memoized per model.
    double eval_g(double u) const;

private:
    struct GCache;
    NonlinearityModel(Kind kind, std::function<double(double)> eval,
                      std::function<double(double)> deriv, double lipschitz);

    Kind kind_;
    std::function<double(double)> eval_;
    std::function<double(double)> deriv_;
    double lipschitz_;
    std::shared_ptr<GCache> gcache_;
};

// Coefficient k sampled at faces: face_values[j] = k(j*dx), j = 0..n+1.
// All values must be strictly positive.
struct CoefficientField {
    std::vector<double> face_values;

    static CoefficientField constant(double k, const Grid& grid);
    static CoefficientField from_function(const std::function<double(double)>& k,
                                          const Grid& grid);
    static CoefficientField from_values(std::vector<double> values, const Grid& grid);
};

// One value per cell; the discrete state u^n.
struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(Grid g, std::vector<double> v);
};

// Cell averages of u0 by fixed 5-point Gauss-Legendre per cell.
GridFunction project_initial(const std::function<double(double)>& u0, const Grid& grid);

struct SolverConfig {
    double dt = 0.0;
    double mesh_ratio = 0.0;  // lambda = dt/dx^2
    // Newton stops when ||F||_inf <= newton_tol * max(1, ||prev||_inf).
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    double damping = 1.0;

    static SolverConfig from_dt(double dt, const Grid& grid);
    // The looser tolerance 0.1*dx^2 used in the original experiment.
    static SolverConfig paper_preset(double dt, const Grid& grid);
};

struct Problem {
    Grid grid;
    NonlinearityModel model;
    CoefficientField k;
    GridFunction u0;
};

}  // namespace degdiff
