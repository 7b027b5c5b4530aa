#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "degdiff/properties.hpp"
#include "degdiff/solver.hpp"

using namespace degdiff;

namespace {

Trajectory short_run(const Problem& p, double dt_over_dx, double t_end) {
    SolverConfig cfg = SolverConfig::from_dt(dt_over_dx * p.grid.dx, p.grid);
    return run(p, cfg, t_end);
}

Problem paper_problem(int n) {
    Grid g = build_grid(n);
    return Problem{g, NonlinearityModel::clipped_quadratic(),
                   CoefficientField::constant(1.0, g),
                   project_initial(
                       [](double x) { return 2.0 * std::sin(2.0 * std::numbers::pi * x); },
                       g)};
}

Trajectory constant_trajectory(int n, double value, int steps) {
    Grid g = build_grid(n);
    Trajectory t;
    t.grid = g;
    t.dt = 0.1;
    for (int i = 0; i <= steps; ++i) {
        t.times.push_back(0.1 * i);
        t.states.emplace_back(g, std::vector<double>(g.cell_count(), value));
    }
    return t;
}

}  // namespace

TEST_CASE("norm functionals") {
    Grid g1 = build_grid(1);
    GridFunction u(g1, {0.0, 1.0});
    CHECK(mass(u) == doctest::Approx(0.5));
    CHECK(l1_norm(u) == doctest::Approx(0.5));
    CHECK(bv_seminorm(u) == doctest::Approx(1.0));
    CHECK(l2_norm(u) == doctest::Approx(std::sqrt(0.5)));

    GridFunction c(build_grid(9), std::vector<double>(10, -2.5));
    CHECK(mass(c) == doctest::Approx(-2.5));
    CHECK(bv_seminorm(c) == 0.0);
    auto [lo, hi] = linf_bounds(c);
    CHECK(lo == -2.5);
    CHECK(hi == -2.5);

    // odd symmetry of 2 sin(2 pi x) about x = 1/2
    auto sine = project_initial(
        [](double x) { return 2.0 * std::sin(2.0 * std::numbers::pi * x); }, build_grid(512));
    CHECK(std::abs(mass(sine)) <= 1e-12);
}

TEST_CASE("norms nonnegative and l1 triangle inequality") {
    std::mt19937_64 rng(13);
    Grid g = build_grid(19);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(g.cell_count()), b(g.cell_count()), s(g.cell_count());
        for (int j = 0; j < g.cell_count(); ++j) {
            a[j] = dist(rng);
            b[j] = dist(rng);
            s[j] = a[j] + b[j];
        }
        GridFunction fa(g, a), fb(g, b), fs(g, s);
        CHECK(l1_norm(fa) >= 0.0);
        CHECK(l2_norm(fa) >= 0.0);
        CHECK(bv_seminorm(fa) >= 0.0);
        CHECK(l1_norm(fs) <= l1_norm(fa) + l1_norm(fb) + 1e-12);
    }
}

TEST_CASE("check_conservation") {
    auto constant = constant_trajectory(9, 1.3, 5);
    auto r = check_conservation(constant, 1e-12);
    CHECK(r.passed);
    CHECK(r.worst_violation == 0.0);

    Problem p = paper_problem(63);
    Trajectory traj = short_run(p, 0.01, 0.01);
    SolverConfig cfg = SolverConfig::from_dt(0.01 * p.grid.dx, p.grid);
    auto r2 = check_conservation(traj, default_check_tolerance(p.grid, cfg.newton_tol));
    CHECK(r2.passed);
}

TEST_CASE("check_l1_contraction") {
    Problem p = paper_problem(31);
    SolverConfig cfg = SolverConfig::from_dt(0.05 * p.grid.dx, p.grid);
    const double tol = default_check_tolerance(p.grid, cfg.newton_tol);

    SUBCASE("identical data gives zero differences") {
        Trajectory a = run(p, cfg, 0.02);
        auto r = check_l1_contraction(a, a, tol);
        CHECK(r.passed);
        CHECK(r.worst_violation == 0.0);
    }
    SUBCASE("constant shift is preserved") {
        Problem q = p;
        q.u0 = p.u0;
        for (auto& v : q.u0.values) v += 0.1;
        Trajectory a = run(p, cfg, 0.02);
        Trajectory b = run(q, cfg, 0.02);
        auto r = check_l1_contraction(a, b, tol);
        CHECK(r.passed);
        // ordered pair with equal mass offset: distance stays at 0.1*(N+1)
        double d = 0.0;
        for (int j = 0; j < p.grid.cell_count(); ++j)
            d += std::abs(a.states.back().values[j] - b.states.back().values[j]);
        CHECK(d == doctest::Approx(0.1 * p.grid.cell_count()).epsilon(1e-8));
    }
    SUBCASE("random pair is nonincreasing") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> dist(-1.5, 1.5);
        Problem q = p;
        for (auto& v : q.u0.values) v = dist(rng);
        Problem s = p;
        for (auto& v : s.u0.values) v = dist(rng);
        auto r = check_l1_contraction(run(q, cfg, 0.02), run(s, cfg, 0.02), tol);
        CHECK(r.passed);
    }
    SUBCASE("mismatched grids rejected") {
        Trajectory a = run(p, cfg, 0.02);
        Problem q = paper_problem(63);
        SolverConfig cfg2 = SolverConfig::from_dt(0.05 * q.grid.dx, q.grid);
        Trajectory b = run(q, cfg2, 0.02);
        CHECK_THROWS_AS(check_l1_contraction(a, b, tol), std::invalid_argument);
    }
}

TEST_CASE("linear scheme: contraction is an equality by superposition") {
    Grid g = build_grid(31);
    auto id = NonlinearityModel::identity();
    auto k = CoefficientField::constant(1.0, g);
    SolverConfig cfg = SolverConfig::from_dt(0.5 * g.dx * g.dx, g);
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> a(g.cell_count()), b(g.cell_count());
    for (int j = 0; j < g.cell_count(); ++j) {
        a[j] = dist(rng);
        b[j] = a[j] + dist(rng);  // ordered pair: |u-v| evolves linearly
    }
    Problem pa{g, id, k, GridFunction(g, a)};
    Problem pb{g, id, k, GridFunction(g, b)};
    Trajectory ta = run(pa, cfg, 0.01);
    Trajectory tb = run(pb, cfg, 0.01);
    double d0 = 0.0, dT = 0.0;
    for (int j = 0; j < g.cell_count(); ++j) {
        d0 += std::abs(ta.states.front().values[j] - tb.states.front().values[j]);
        dT += std::abs(ta.states.back().values[j] - tb.states.back().values[j]);
    }
    CHECK(std::abs(dT - d0) <= 10.0 * cfg.newton_tol * g.cell_count());
}

TEST_CASE("check_bv_nonincrease") {
    SUBCASE("constant data") {
        auto r = check_bv_nonincrease(constant_trajectory(15, 0.2, 4), 1e-12);
        CHECK(r.passed);
    }
    SUBCASE("monotone data keeps BV equal to its range") {
        Grid g = build_grid(31);
        auto G = NonlinearityModel::clipped_quadratic();
        auto k = CoefficientField::constant(1.0, g);
        GridFunction u0 = project_initial([](double x) { return 2.0 * x - 1.0; }, g);
        Problem p{g, G, k, u0};
        SolverConfig cfg = SolverConfig::from_dt(0.05 * g.dx, g);
        Trajectory traj = run(p, cfg, 0.05);
        const double tol = default_check_tolerance(g, cfg.newton_tol);
        auto r = check_bv_nonincrease(traj, tol);
        CHECK(r.passed);
        // monotone initial data stays monotone, so BV stays at the range
        for (const auto& s : traj.states) {
            for (int j = 0; j + 1 < g.cell_count(); ++j)
                CHECK(s.values[j] <= s.values[j + 1] + tol);
            CHECK(bv_seminorm(s) ==
                  doctest::Approx(s.values.back() - s.values.front()).epsilon(1e-12));
        }
    }
    SUBCASE("nonlinear run") {
        Problem p = paper_problem(63);
        Trajectory traj = short_run(p, 0.01, 0.01);
        auto r = check_bv_nonincrease(traj, default_check_tolerance(p.grid, 1e-12));
        CHECK(r.passed);
    }
}

TEST_CASE("check_entropy_inequality") {
    SUBCASE("constant trajectory gives exactly zero") {
        auto traj = constant_trajectory(7, 0.9, 3);
        Grid g = traj.grid;
        auto k = CoefficientField::constant(1.0, g);
        auto G = NonlinearityModel::clipped_quadratic();
        auto r = check_entropy_inequality(traj, EntropyFamily::quadratic(), k, G, 0.0);
        CHECK(r.passed);
        for (double v : r.per_step_values) CHECK(v == 0.0);
    }
    SUBCASE("2-cell heat step by hand") {
        Grid g = build_grid(1);
        auto id = NonlinearityModel::identity();
        auto k = CoefficientField::constant(1.0, g);
        SolverConfig cfg = SolverConfig::from_dt(g.dx * g.dx, g);  // lambda = 1
        Problem p{g, id, k, GridFunction(g, {0.0, 1.0})};
        Trajectory traj = run(p, cfg, cfg.dt);
        // u^1 = (1/3, 2/3): R_0 = 5/18 + (1/3)(1/3) - 1/2 = -1/9
        double half_next = 0.5 * (1.0 / 9.0 + 4.0 / 9.0);
        CHECK(half_next == doctest::Approx(5.0 / 18.0));
        CHECK(half_next < 0.5);
        auto r = check_entropy_inequality(traj, EntropyFamily::quadratic(), k, id, 1e-10);
        CHECK(r.per_step_values[0] == doctest::Approx(-1.0 / 9.0).epsilon(1e-9));
        CHECK(r.passed);
    }
    SUBCASE("Kruzkov family on a nonlinear run") {
        Problem p = paper_problem(63);
        Trajectory traj = short_run(p, 0.01, 0.005);
        for (double c : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
            auto fam = EntropyFamily::kruzkov(c, p.grid.dx);
            auto r = check_entropy_inequality(traj, fam, p.k, p.model, 1e-8);
            CHECK(r.passed);
            auto d = check_entropy_dissipation_nonneg(traj, fam, p.k, p.model, 1e-12);
            CHECK(d.passed);
        }
    }
    SUBCASE("non-convex custom entropy rejected") {
        CHECK_THROWS_AS(EntropyFamily::custom(
                            "concave", [](double u) { return -u * u; },
                            [](double u) { return -2.0 * u; }, [](double) { return -2.0; }),
                        std::invalid_argument);
    }
}

TEST_CASE("Kruzkov entropy outside the data range degenerates to conservation") {
    Problem p = paper_problem(31);
    Trajectory traj = short_run(p, 0.05, 0.02);
    // data lies in [-2, 2]; c = 5 is far outside, eta' is constant -1
    auto fam = EntropyFamily::kruzkov(5.0, p.grid.dx);
    const double lambda = traj.dt / (p.grid.dx * p.grid.dx);
    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n) {
        double eta_diff = 0.0, mass_diff = 0.0, dissip = 0.0;
        for (int j = 0; j < p.grid.cell_count(); ++j) {
            eta_diff += fam.eta(traj.states[n + 1].values[j]) -
                        fam.eta(traj.states[n].values[j]);
            mass_diff += traj.states[n + 1].values[j] - traj.states[n].values[j];
        }
        for (int j = 0; j + 1 < p.grid.cell_count(); ++j)
            dissip += (fam.eta_prime(traj.states[n + 1].values[j + 1]) -
                       fam.eta_prime(traj.states[n + 1].values[j]));
        CHECK(dissip == 0.0);
        CHECK(eta_diff == doctest::Approx(-mass_diff).epsilon(1e-10));
        CHECK(std::abs(mass_diff) <= 1e-9);
    }
    (void)lambda;
}

TEST_CASE("check_time_continuity") {
    SUBCASE("constant data: both sides zero") {
        auto traj = constant_trajectory(9, 0.3, 4);
        auto k = CoefficientField::constant(1.0, traj.grid);
        auto r = check_time_continuity(traj, k, NonlinearityModel::clipped_quadratic(), 0.0);
        CHECK(r.passed);
        for (double v : r.per_step_values) CHECK(v == 0.0);
    }
    SUBCASE("heat case holds with strict inequality after step 1") {
        Grid g = build_grid(31);
        auto id = NonlinearityModel::identity();
        auto k = CoefficientField::constant(1.0, g);
        GridFunction u0 = project_initial(
            [](double x) { return std::sin(2.0 * std::numbers::pi * x); }, g);
        Problem p{g, id, k, u0};
        SolverConfig cfg = SolverConfig::from_dt(0.5 * g.dx * g.dx, g);
        Trajectory traj = run(p, cfg, 20 * cfg.dt);
        auto r = check_time_continuity(traj, k, id,
                                       default_check_tolerance(g, cfg.newton_tol));
        CHECK(r.passed);
        CHECK(r.per_step_values[1] < 0.0);
    }
    SUBCASE("nonlinear run") {
        Problem p = paper_problem(63);
        Trajectory traj = short_run(p, 0.01, 0.01);
        auto r = check_time_continuity(traj, p.k, p.model,
                                       default_check_tolerance(p.grid, 1e-12));
        CHECK(r.passed);
    }
}

TEST_CASE("flux_bv") {
    auto id = NonlinearityModel::identity();
    SUBCASE("constant and flat-branch data give zero") {
        Grid g = build_grid(9);
        auto k = CoefficientField::constant(1.0, g);
        GridFunction c(g, std::vector<double>(10, 0.8));
        CHECK(flux_bv(c, k, id) == 0.0);
        auto G = NonlinearityModel::clipped_quadratic();
        GridFunction flat(g, std::vector<double>(10, -0.5));
        flat.values[3] = -1.2;
        CHECK(flux_bv(flat, k, G) == 0.0);
    }
    SUBCASE("hand stencil on (0,1,0)") {
        Grid g = build_grid(2);
        auto k = CoefficientField::constant(1.0, g);
        GridFunction u(g, {0.0, 1.0, 0.0});
        CHECK(flux_bv(u, k, id) == doctest::Approx(12.0));
    }
}

TEST_CASE("dissipation_budget") {
    auto id = NonlinearityModel::identity();
    SUBCASE("constant trajectory gives zero") {
        auto traj = constant_trajectory(9, 0.4, 4);
        auto k = CoefficientField::constant(1.0, traj.grid);
        CHECK(dissipation_budget(traj, k, id) == 0.0);
    }
    SUBCASE("bounded across refinements") {
        std::vector<double> budgets;
        for (int n : {64, 128, 256}) {
            Problem p = paper_problem(n);
            Trajectory traj = short_run(p, 0.05, 0.02);
            budgets.push_back(dissipation_budget(traj, p.k, p.model));
        }
        double lo = *std::min_element(budgets.begin(), budgets.end());
        double hi = *std::max_element(budgets.begin(), budgets.end());
        CHECK(lo > 0.0);
        CHECK(hi <= 2.0 * lo);
    }
}

TEST_CASE("energy identity for the linear scheme") {
    Grid g = build_grid(63);
    auto id = NonlinearityModel::identity();
    auto k = CoefficientField::constant(1.0, g);
    GridFunction u0 = project_initial(
        [](double x) { return 2.0 * std::sin(2.0 * std::numbers::pi * x); }, g);
    Problem p{g, id, k, u0};
    SolverConfig cfg = SolverConfig::from_dt(0.1 * g.dx, g);
    Trajectory traj = run(p, cfg, 0.05);
    CHECK(energy_identity_gap(traj, k, id) <= 1e-8);
}

TEST_CASE("holder_modulus") {
    auto G = NonlinearityModel::clipped_quadratic();
    SUBCASE("constant data gives zero") {
        auto traj = constant_trajectory(15, 0.5, 5);
        CHECK(holder_modulus(traj, G, 100) == 0.0);
    }
    SUBCASE("flat-branch data gives zero") {
        Grid g = build_grid(15);
        Trajectory traj;
        traj.grid = g;
        traj.dt = 0.1;
        for (int i = 0; i < 4; ++i) {
            traj.times.push_back(0.1 * i);
            std::vector<double> v(g.cell_count());
            for (int j = 0; j < g.cell_count(); ++j) v[j] = -0.2 - 0.1 * j;
            traj.states.emplace_back(g, std::move(v));
        }
        CHECK(holder_modulus(traj, G, 100) == 0.0);
    }
    SUBCASE("reported constants stable across refinements") {
        std::vector<double> mods;
        for (int n : {32, 64, 128}) {
            Problem p = paper_problem(n);
            Trajectory traj = short_run(p, 0.05, 0.02);
            mods.push_back(holder_modulus(traj, p.model, 400));
        }
        for (double m : mods) CHECK(m > 0.0);
        double lo = *std::min_element(mods.begin(), mods.end());
        double hi = *std::max_element(mods.begin(), mods.end());
        CHECK(hi <= 2.0 * lo);
    }
}

TEST_CASE("report invariant: passed iff worst violation within tolerance") {
    auto r = make_report("demo", {0.1, -0.5, 0.3}, 0.2);
    CHECK(r.worst_violation == doctest::Approx(0.3));
    CHECK_FALSE(r.passed);
    auto r2 = make_report("demo", {0.1, -0.5}, 0.2);
    CHECK(r2.passed);
}
