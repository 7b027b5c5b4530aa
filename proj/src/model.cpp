#include "degdiff/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace degdiff {

Grid build_grid(int n) {
    if (n < 1) throw std::invalid_argument("build_grid: n must be >= 1");
    Grid g;
    g.n = n;
    g.dx = 1.0 / (n + 1);
    return g;
}

struct NonlinearityModel::GCache {
    std::mutex mutex;
    std::map<double, double> values;
};

NonlinearityModel::NonlinearityModel(Kind kind, std::function<double(double)> eval,
                                     std::function<double(double)> deriv, double lipschitz)
    : kind_(kind),
      eval_(std::move(eval)),
      deriv_(std::move(deriv)),
      lipschitz_(lipschitz),
      gcache_(std::make_shared<GCache>()) {}

NonlinearityModel NonlinearityModel::clipped_quadratic() {
    auto eval = [](double u) {
        if (u < 0.0) return 0.0;
        if (u > 1.0) return 1.0;
        return u * (2.0 - u);
    };
    // One-sided branch derivative at the kinks u=0, u=1.
    auto deriv = [](double u) {
        if (u < 0.0 || u > 1.0) return 0.0;
        return 2.0 - 2.0 * u;
    };
    return NonlinearityModel(Kind::ClippedQuadratic, eval, deriv, 2.0);
}

NonlinearityModel NonlinearityModel::identity() {
    return NonlinearityModel(
        Kind::Identity, [](double u) { return u; }, [](double) { return 1.0; }, 1.0);
}

NonlinearityModel NonlinearityModel::from_table(std::vector<std::pair<double, double>> pts) {
    if (pts.size() < 2) throw std::invalid_argument("G table needs at least 2 points");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i].first < pts[i + 1].first))
            throw std::invalid_argument("G table abscissae must be strictly increasing");
        if (pts[i].second > pts[i + 1].second + 1e-15)
            throw std::invalid_argument("G table values must be nondecreasing");
    }
    double lip = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double slope = (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);
        lip = std::max(lip, slope);
    }
    auto table = std::make_shared<std::vector<std::pair<double, double>>>(std::move(pts));
    auto segment = [table](double u) -> std::size_t {
        auto it = std::upper_bound(table->begin(), table->end(), u,
                                   [](double x, const auto& p) { return x < p.first; });
        if (it == table->begin()) return 0;
        std::size_t i = static_cast<std::size_t>(it - table->begin()) - 1;
        return std::min(i, table->size() - 2);
    };
    auto eval = [table, segment](double u) {
        if (u <= table->front().first) return table->front().second;
        if (u >= table->back().first) return table->back().second;
        std::size_t i = segment(u);
        const auto& [ua, ga] = (*table)[i];
        const auto& [ub, gb] = (*table)[i + 1];
        return ga + (gb - ga) * (u - ua) / (ub - ua);
    };
    auto deriv = [table, segment](double u) {
        if (u < table->front().first || u > table->back().first) return 0.0;
        std::size_t i = segment(u);
        const auto& [ua, ga] = (*table)[i];
        const auto& [ub, gb] = (*table)[i + 1];
        return (gb - ga) / (ub - ua);
    };
    return NonlinearityModel(Kind::UserTable, eval, deriv, std::max(lip, 1e-300));
}

NonlinearityModel NonlinearityModel::from_closures(std::function<double(double)> eval,
                                                  std::function<double(double)> deriv,
                                                  double lipschitz_const, double lo, double hi) {
    if (!(lipschitz_const > 0.0))
        throw std::invalid_argument("lipschitz_const must be positive");
    // Closures cannot be verified symbolically; sample densely instead.
    const int samples = 10000;
    double prev_u = lo, prev_G = eval(lo);
    for (int i = 0; i <= samples; ++i) {
        double u = lo + (hi - lo) * i / samples;
        double d = deriv(u);
        double G = eval(u);
        if (!std::isfinite(G) || !std::isfinite(d))
            throw std::invalid_argument("G or G' non-finite at sample point");
        if (d < -1e-12) throw std::invalid_argument("G' negative at sample point");
        if (d > lipschitz_const * (1.0 + 1e-9) + 1e-12)
            throw std::invalid_argument("G' exceeds lipschitz_const at sample point");
        if (std::abs(G - prev_G) > lipschitz_const * std::abs(u - prev_u) + 1e-9)
            throw std::invalid_argument("G violates Lipschitz bound on sample pair");
        prev_u = u;
        prev_G = G;
    }
    return NonlinearityModel(Kind::UserClosure, std::move(eval), std::move(deriv),
                             lipschitz_const);
}

double NonlinearityModel::eval(double u) const {
    if (!std::isfinite(u)) throw std::invalid_argument("eval_G: non-finite argument");
    return eval_(u);
}

double NonlinearityModel::deriv(double u) const {
    if (!std::isfinite(u)) throw std::invalid_argument("deriv: non-finite argument");
    return deriv_(u);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double m,
               double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double m,
                        double fm, double b, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, fa, lm, flm, m, fm);
    double right = simpson(f, m, fm, rm, frm, b, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson(f, a, fa, m, fm, b, fb, simpson(f, a, fa, m, fm, b, fb), tol, 40);
}

}  // namespace

double NonlinearityModel::eval_g(double u) const {
    if (!std::isfinite(u)) throw std::invalid_argument("eval_g: non-finite argument");
    {
        std::lock_guard lock(gcache_->mutex);
        auto it = gcache_->values.find(u);
        if (it != gcache_->values.end()) return it->second;
    }
    auto integrand = [this](double s) { return std::sqrt(std::max(0.0, deriv_(s))); };
    double value = integrate(integrand, 0.0, u, 1e-10);
    std::lock_guard lock(gcache_->mutex);
    gcache_->values.emplace(u, value);
    return value;
}

CoefficientField CoefficientField::constant(double k, const Grid& grid) {
    if (!(k > 0.0)) throw std::invalid_argument("coefficient k must be positive");
    CoefficientField f;
    f.face_values.assign(grid.n + 2, k);
    return f;
}

CoefficientField CoefficientField::from_function(const std::function<double(double)>& k,
                                                 const Grid& grid) {
    CoefficientField f;
    f.face_values.resize(grid.n + 2);
    for (int j = 0; j <= grid.n + 1; ++j) {
        double v = k(grid.face(j));
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("coefficient k must be positive at every face");
        f.face_values[j] = v;
    }
    return f;
}

CoefficientField CoefficientField::from_values(std::vector<double> values, const Grid& grid) {
    if (static_cast<int>(values.size()) != grid.n + 2)
        throw std::invalid_argument("coefficient face array must have n+2 entries");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("coefficient k must be positive at every face");
    CoefficientField f;
    f.face_values = std::move(values);
    return f;
}

GridFunction::GridFunction(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.cell_count())
        throw std::invalid_argument("GridFunction length must equal grid cell count");
    for (double x : values)
        if (!std::isfinite(x)) throw std::invalid_argument("GridFunction value non-finite");
}

GridFunction project_initial(const std::function<double(double)>& u0, const Grid& grid) {
    // 5-point Gauss-Legendre on [-1,1].
    static const double node[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                   0.5384693101056831, 0.9061798459386640};
    static const double weight[5] = {0.2369268850561891, 0.4786286704993665,
                                     0.5688888888888889, 0.4786286704993665,
                                     0.2369268850561891};
    std::vector<double> vals(grid.cell_count());
    for (int j = 0; j < grid.cell_count(); ++j) {
        double a = grid.face(j), b = grid.face(j + 1);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (int q = 0; q < 5; ++q) {
            double s = u0(mid + half * node[q]);
            if (!std::isfinite(s))
                throw std::invalid_argument("project_initial: u0 non-finite in cell");
            acc += weight[q] * s;
        }
        vals[j] = 0.5 * acc;  // cell average: (1/dx) * half * sum = sum/2
    }
    return GridFunction(grid, std::move(vals));
}

SolverConfig SolverConfig::from_dt(double dt, const Grid& grid) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.mesh_ratio = dt / (grid.dx * grid.dx);
    return cfg;
}

SolverConfig SolverConfig::paper_preset(double dt, const Grid& grid) {
    SolverConfig cfg = from_dt(dt, grid);
    cfg.newton_tol = 0.1 * grid.dx * grid.dx;
    return cfg;
}

}  // namespace degdiff
