#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "merf/analysis.hpp"
#include "merf/grid.hpp"
#include "support.hpp"

using merf::cumulative_integral;
using merf::eval;
using merf::Grid;
using merf::GridFunction;
using merf::make_uniform_grid;
using merf::sup_norm_diff;

namespace {
constexpr double kSqrtPiOver2 = 0.8862269254527580;  // int_0^inf exp(-w^2) dw
}

TEST_CASE("make_uniform_grid produces the stated points") {
    const Grid g3 = make_uniform_grid(1.0, 3);
    REQUIRE(g3.size() == 3);
    CHECK(g3[0] == 0.0);
    CHECK(g3[1] == 0.5);
    CHECK(g3[2] == 1.0);

    const Grid g5 = make_uniform_grid(5.0, 5);
    const std::vector<double> expected{0.0, 1.25, 2.5, 3.75, 5.0};
    for (std::size_t i = 0; i < 5; ++i) CHECK(g5[i] == expected[i]);
}

TEST_CASE("make_uniform_grid rejects bad arguments") {
    CHECK_THROWS_AS(make_uniform_grid(2.0, 4), std::invalid_argument);   // even n
    CHECK_THROWS_AS(make_uniform_grid(2.0, 1), std::invalid_argument);   // too small
    CHECK_THROWS_AS(make_uniform_grid(0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform_grid(-1.0, 5), std::invalid_argument);
}

TEST_CASE("Grid validates its invariants") {
    CHECK_THROWS_AS(Grid({0.1, 0.5, 1.0}), std::invalid_argument);        // does not start at 0
    CHECK_THROWS_AS(Grid({0.0, 0.5, 0.5}), std::invalid_argument);        // not increasing
    CHECK_THROWS_AS(Grid({0.0, 0.5, 1.0, 1.5}), std::invalid_argument);   // even count
    CHECK_THROWS_AS(Grid({0.0, 0.4, 1.0}), std::invalid_argument);        // non-uniform
    CHECK_NOTHROW(Grid({0.0, 0.5, 1.0}));
}

TEST_CASE("GridFunction rejects non-finite values and size mismatch") {
    const Grid g = make_uniform_grid(1.0, 3);
    CHECK_THROWS_AS(GridFunction(g, {0.0, std::nan(""), 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(g, {0.0, HUGE_VAL, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(g, {0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("eval: constants, linear data, smooth data") {
    const Grid g = make_uniform_grid(1.0, 101);
    const GridFunction zero = merf::zero_function(g);
    CHECK(eval(zero, 0.37) == 0.0);
    CHECK(eval(zero, 1.0) == 0.0);

    // Linear data is reproduced exactly.
    const GridFunction ident = testsupport::sample(g, [](double x) { return x; });
    CHECK_THAT(eval(ident, 0.3), Catch::Matchers::WithinAbs(0.3, 1e-15));

    // Smooth data on a fine grid: x^2 at x = 0.25.
    const Grid fine = make_uniform_grid(1.0, 2001);
    const GridFunction sq = testsupport::sample(fine, [](double x) { return x * x; });
    CHECK_THAT(eval(sq, 0.25), Catch::Matchers::WithinAbs(0.0625, 1e-6));
}

TEST_CASE("eval rejects points outside the domain") {
    const Grid g = make_uniform_grid(1.0, 11);
    const GridFunction f = merf::zero_function(g);
    CHECK_THROWS_AS(eval(f, -0.01), std::domain_error);
    CHECK_THROWS_AS(eval(f, 1.01), std::domain_error);
}

TEST_CASE("eval reproduces samples bit-exactly at grid points") {
    std::mt19937 rng(7);
    const Grid g = make_uniform_grid(3.0, 41);
    const GridFunction f = testsupport::random_k_element(g, rng, false);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(eval(f, g[i]) == f[i]);
}

TEST_CASE("eval preserves monotonicity and the sample range") {
    std::mt19937 rng(11);
    const Grid g = make_uniform_grid(2.0, 51);
    for (int rep = 0; rep < 20; ++rep) {
        const GridFunction mono = testsupport::random_k_element(g, rng, true);
        double prev = -1.0;
        for (int j = 0; j <= 500; ++j) {
            const double x = 2.0 * j / 500.0;
            const double v = eval(mono, x);
            CHECK(v >= prev - 1e-14);
            CHECK(v >= -1e-14);
            CHECK(v <= 1.0 + 1e-14);
            prev = v;
        }
    }
    // Range stays inside [0,1] for non-monotone samples too.
    for (int rep = 0; rep < 20; ++rep) {
        const GridFunction any = testsupport::random_k_element(g, rng, false);
        for (int j = 0; j <= 500; ++j) {
            const double v = eval(any, 2.0 * j / 500.0);
            CHECK(v >= -1e-14);
            CHECK(v <= 1.0 + 1e-14);
        }
    }
}

TEST_CASE("sup_norm_diff basics") {
    const Grid g = make_uniform_grid(5.0, 1001);
    const GridFunction zero = merf::zero_function(g);
    const GridFunction one = testsupport::sample(g, [](double) { return 1.0; });
    CHECK(sup_norm_diff(zero, zero) == 0.0);
    CHECK(sup_norm_diff(one, zero) == 1.0);

    const GridFunction erf_f = testsupport::sample(g, merf::erf_reference);
    CHECK_THAT(sup_norm_diff(erf_f, zero),
               Catch::Matchers::WithinAbs(0.9999999999984626, 1e-14));

    const Grid other = make_uniform_grid(5.0, 501);
    CHECK_THROWS_AS(sup_norm_diff(zero, merf::zero_function(other)), std::invalid_argument);
}

TEST_CASE("cumulative_integral: exact cases") {
    const Grid g2 = make_uniform_grid(2.0, 201);
    const GridFunction one = testsupport::sample(g2, [](double) { return 1.0; });
    const GridFunction c1 = cumulative_integral(one);
    for (std::size_t i = 0; i < g2.size(); ++i)
        CHECK_THAT(c1[i], Catch::Matchers::WithinAbs(g2[i], 1e-13));

    const Grid g1 = make_uniform_grid(1.0, 201);
    const GridFunction lin = testsupport::sample(g1, [](double x) { return 2.0 * x; });
    CHECK_THAT(cumulative_integral(lin).values().back(),
               Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("cumulative_integral: Gaussian integral and refinement") {
    const auto gauss = [](double x) { return std::exp(-x * x); };
    const Grid g = make_uniform_grid(6.0, 2001);
    const double v = cumulative_integral(testsupport::sample(g, gauss)).values().back();
    CHECK_THAT(v, Catch::Matchers::WithinAbs(kSqrtPiOver2, 1e-10));

    // Independent oracle route for the same number.
    const double oracle = testsupport::independent_simpson(gauss, 0.0, 6.0, 4000);
    CHECK_THAT(v, Catch::Matchers::WithinAbs(oracle, 1e-12));

    const Grid g2 = make_uniform_grid(6.0, 4001);
    const double v2 = cumulative_integral(testsupport::sample(g2, gauss)).values().back();
    CHECK(std::abs(v2 - v) <= 1e-10);
}

TEST_CASE("cumulative_integral is linear") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const Grid g = make_uniform_grid(4.0, 401);
    for (int rep = 0; rep < 10; ++rep) {
        const GridFunction f = testsupport::random_k_element(g, rng, false);
        const GridFunction h = testsupport::random_k_element(g, rng, true);
        const double a = coef(rng);
        const double b = coef(rng);
        std::vector<double> comb(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) comb[i] = a * f[i] + b * h[i];
        const GridFunction lhs = cumulative_integral(GridFunction(g, std::move(comb)));
        const GridFunction cf = cumulative_integral(f);
        const GridFunction ch = cumulative_integral(h);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double rhs = a * cf[i] + b * ch[i];
            const double scale = std::max({std::abs(lhs[i]), std::abs(rhs), 1.0});
            CHECK(std::abs(lhs[i] - rhs) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("cumulative_integral of a smooth nonnegative function is nondecreasing") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    const Grid g = make_uniform_grid(5.0, 501);
    for (int rep = 0; rep < 20; ++rep) {
        const double w = u(rng);
        const double phase = u(rng);
        const double base = 0.05 * u(rng);
        const GridFunction f = testsupport::sample(g, [&](double x) {
            const double s = std::sin(w * x + phase);
            return base + s * s * std::exp(-0.1 * x);
        });
        const GridFunction c = cumulative_integral(f);
        for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(c[i + 1] >= c[i]);
    }
}
