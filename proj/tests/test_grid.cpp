#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fraclab/errors.hpp"
#include "fraclab/grid.hpp"

using namespace fraclab;

TEST_SUITE("grid") {

TEST_CASE("Chebyshev extrema grid") {
    const auto g = make_grid(33);
    REQUIRE(g->size() == 33);
    CHECK(g->node(g->center()) == 0.0);
    CHECK(g->node(0) == -1.0);
    CHECK(g->node(32) == 1.0);
    CHECK(g->is_symmetric());
    for (std::size_t j = 0; j + 1 < g->size(); ++j) CHECK(g->node(j) < g->node(j + 1));
    for (std::size_t j = 0; j < g->size(); ++j) CHECK(g->node(32 - j) == -g->node(j));
}

TEST_CASE("refinement nests the nodes") {
    const auto g = make_grid(65), f = make_grid(129);
    for (std::size_t j = 0; j < g->size(); ++j) CHECK(std::fabs(f->node(2 * j) - g->node(j)) < 1e-15);
}

TEST_CASE("invalid sizes") {
    CHECK_THROWS_AS(make_grid(31), DomainError);
    CHECK_THROWS_AS(make_grid(64), DomainError);
}

TEST_CASE("interval lookup and spacing") {
    const auto g = make_grid(65);
    for (double x : {-0.99, -0.3, 0.0, 0.123, 0.77}) {
        const std::size_t j = g->interval_of(x);
        CHECK(g->node(j) <= x);
        CHECK(x < g->node(j + 1));
    }
    CHECK(g->interval_of(1.0) == 63);
    CHECK(g->spacing_at(0.0) == doctest::Approx(g->node(33) - g->node(32)));
}

TEST_CASE("interpolation reproduces polynomials") {
    const auto g = make_grid(33);
    auto poly = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x * x; };
    const auto u = GridFunction::sample(g, poly);
    for (double x : {-0.95, -0.41, 0.0, 0.3333, 0.9}) {
        CHECK(u.interpolate(x) == doctest::Approx(poly(x)).epsilon(1e-13));
        CHECK(u.interpolate_local(x, 3) == doctest::Approx(poly(x)).epsilon(1e-12));
    }
    CHECK(u.interpolate(g->node(5)) == poly(g->node(5)));
    CHECK(u.interpolate(1.5) == 0.0);
    CHECK(u.interpolate_local(-1.5, 3) == 0.0);
}

TEST_CASE("Taylor coefficients of the local interpolant") {
    const auto g = make_grid(65);
    auto poly = [](double x) { return 2.0 + x - 3.0 * x * x + x * x * x; };
    const auto u = GridFunction::sample(g, poly);
    const double x = 0.21;
    const auto idx = nearest_stencil(*g, x, 3);
    REQUIRE(idx.size() == 4);
    const auto c = taylor_at(*g, u.values(), idx, x);
    CHECK(c[0] == doctest::Approx(poly(x)).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(1.0 - 6.0 * x + 3.0 * x * x).epsilon(1e-10));
    CHECK(c[2] == doctest::Approx(-3.0 + 3.0 * x).epsilon(1e-9));
    CHECK(c[3] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("sup norm and scaling") {
    const auto g = make_grid(33);
    const auto u = GridFunction::sample(g, [](double x) { return x - 0.5; });
    CHECK(u.sup_norm() == 1.5);
    CHECK(u.scaled(-2.0).sup_norm() == 3.0);
    CHECK(GridFunction::zeros(g).sup_norm() == 0.0);
}

TEST_CASE("CSV round trip is exact") {
    const auto g = make_grid(33);
    const auto u = GridFunction::sample(g, [](double x) { return std::exp(x) / 3.0; });
    std::stringstream ss;
    write_csv(u, ss);
    const CsvSamples s = read_csv(ss);
    REQUIRE(s.x.size() == 33);
    const auto v = resample(s, g);
    for (std::size_t j = 0; j < 33; ++j) CHECK(v[j] == u[j]);
}

TEST_CASE("CSV resampling is piecewise linear") {
    std::stringstream ss("x,value\n-1,0\n0,1\n1,0\n");
    const auto v = resample(read_csv(ss), make_grid(33));
    for (std::size_t j = 0; j < v.size(); ++j) CHECK(v[j] == doctest::Approx(1.0 - std::fabs(v.grid()->node(j))));
}

TEST_CASE("malformed CSV") {
    for (const char* bad : {"", "x,value\n", "x,value\n0,1\n0,2\n", "x,value\n0,a\n", "x,value\n1,0\n0,1\n",
                            "x,value\n0,1,2\n", "y,z\n0,1\n1,0\n"}) {
        std::stringstream ss(bad);
        CAPTURE(bad);
        CHECK_THROWS_AS(read_csv(ss), DomainError);
    }
}

}
