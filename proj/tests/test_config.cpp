#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "degdiff/config.hpp"
#include "degdiff/csv.hpp"

using namespace degdiff;
using nlohmann::json;

namespace {

json base_config() {
    return json{{"n", 31},         {"dt_over_dx", 0.05}, {"t_end", 0.1},
                {"G", "identity"}, {"k", 1.0},           {"u0", "paper_sine"}};
}

}  // namespace

TEST_CASE("parse_config happy path") {
    RunSetup s = parse_config(base_config());
    CHECK(s.n == 31);
    CHECK(s.t_end == 0.1);
    CHECK(s.snapshots == std::vector<double>{0.0, 0.1});
    Problem p = s.spec.instantiate(s.n);
    CHECK(p.grid.cell_count() == 32);
    SolverConfig cfg = s.make_config(p.grid);
    CHECK(cfg.dt == doctest::Approx(0.05 / 32.0));
    CHECK(cfg.newton_tol == 1e-12);
}

TEST_CASE("parse_config rejections") {
    SUBCASE("unknown key") {
        auto j = base_config();
        j["visosity"] = 0.1;
        CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("visosity"), ConfigError);
    }
    SUBCASE("missing key") {
        auto j = base_config();
        j.erase("u0");
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("both dt and dt_over_dx") {
        auto j = base_config();
        j["dt"] = 0.001;
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("neither dt nor dt_over_dx") {
        auto j = base_config();
        j.erase("dt_over_dx");
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("bad n") {
        auto j = base_config();
        j["n"] = 0;
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("unknown G builtin") {
        auto j = base_config();
        j["G"] = "cubic";
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("snapshot outside [0, t_end]") {
        auto j = base_config();
        j["snapshots"] = {0.0, 0.5};
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("empty config") { CHECK_THROWS_AS(parse_config(json::object()), ConfigError); }
}

TEST_CASE("parse_config table G and array k/u0") {
    auto j = base_config();
    j["n"] = 2;
    j["G"] = json::array({{0.0, 0.0}, {1.0, 1.0}});
    j["k"] = json::array({1.0, 2.0, 3.0, 4.0});
    j["u0"] = json::array({0.1, 0.2, 0.3});
    RunSetup s = parse_config(j);
    Problem p = s.spec.instantiate(2);
    CHECK(p.k.face_values[1] == 2.0);
    CHECK(p.u0.values[2] == 0.3);
    CHECK(p.model.eval(0.5) == doctest::Approx(0.5));
    // array-bound specs only instantiate at their own n
    CHECK_THROWS(s.spec.instantiate(5));
}

TEST_CASE("newton_tol options") {
    auto j = base_config();
    SUBCASE("numeric override") {
        j["newton_tol"] = 1e-10;
        RunSetup s = parse_config(j);
        Grid g = build_grid(s.n);
        CHECK(s.make_config(g).newton_tol == 1e-10);
    }
    SUBCASE("paper preset tolerance") {
        j["newton_tol"] = "paper";
        RunSetup s = parse_config(j);
        Grid g = build_grid(s.n);
        CHECK(s.make_config(g).newton_tol == doctest::Approx(0.1 * g.dx * g.dx));
    }
    SUBCASE("unknown string rejected") {
        j["newton_tol"] = "loose";
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
}

TEST_CASE("presets") {
    RunSetup ex = preset("paper-example");
    CHECK(ex.n == 512);
    CHECK(ex.t_end == 0.2);
    CHECK(ex.snapshots == std::vector<double>{0.0, 0.07, 0.13, 0.2});
    Grid g = build_grid(ex.n);
    CHECK(g.dx == doctest::Approx(1.0 / 513.0));
    CHECK(ex.make_config(g).dt == doctest::Approx(0.01 * g.dx));
    Problem p = ex.spec.instantiate(64);  // closure-based, any resolution
    CHECK(p.model.eval(0.5) == doctest::Approx(0.75));

    RunSetup heat = preset("heat");
    CHECK(heat.spec.model.eval(0.5) == doctest::Approx(0.5));

    CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("format_double round-trips") {
    for (double x : {0.0, 1.0, -2.5, 1.0 / 3.0, 6.02e23, 1e-300}) {
        CHECK(std::stod(format_double(x)) == x);
    }
}
