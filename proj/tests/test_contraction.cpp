#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "merf/contraction.hpp"

using merf::contraction_constants;
using merf::Params;
using merf::region_boundary;
using merf::region_scan;
using merf::remark_closed_form;

TEST_CASE("Params enforces the domain (-1,+inf) with numerical floor") {
    CHECK_NOTHROW(Params(0.0, 0.0));
    CHECK_NOTHROW(Params(-1.0 + 1e-6, 5.0));
    CHECK_THROWS_AS(Params(-1.0 + 1e-7, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(-1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(0.0, -1.5), std::invalid_argument);
    CHECK_THROWS_AS(Params(std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("contraction_constants at hand-evaluated points") {
    const auto r00 = contraction_constants(Params(0.0, 0.0));
    CHECK(r00.m == 0.0);
    CHECK(r00.in_region);
    CHECK(r00.m1 > 0.0);
    CHECK(r00.m2 > 0.0);

    // delta = gamma = 0.1: M = (1.1)^2 * 0.2.
    const auto r11 = contraction_constants(Params(0.1, 0.1));
    CHECK_THAT(r11.m, Catch::Matchers::WithinAbs(0.242, 1e-14));
    CHECK(r11.in_region);

    // delta = 0.2, gamma = 0: matches the closed form delta(1+delta)^{3/2}(3+delta).
    const auto r20 = contraction_constants(Params(0.2, 0.0));
    CHECK_THAT(r20.m, Catch::Matchers::WithinAbs(0.841301848327935, 1e-12));
    CHECK(r20.in_region);

    // delta = gamma = -0.1: M = 0.2 / 0.9^3.
    const auto rmm = contraction_constants(Params(-0.1, -0.1));
    CHECK_THAT(rmm.m, Catch::Matchers::WithinAbs(0.2 / 0.729, 1e-14));
    CHECK(rmm.in_region);
}

TEST_CASE("report invariants: m = 2 m2 m3, in_region = (m < 1), all finite") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> d(-0.95, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const Params p(d(rng), d(rng));
        const auto r = contraction_constants(p);
        CHECK(std::isfinite(r.m1));
        CHECK(std::isfinite(r.m2));
        CHECK(std::isfinite(r.m3));
        CHECK(std::isfinite(r.m));
        CHECK(r.m1 > 0.0);
        CHECK(r.m2 > 0.0);
        CHECK(r.m3 >= 0.0);
        CHECK(std::abs(r.m - 2.0 * r.m2 * r.m3) <= 1e-14 * std::max(r.m, 1.0));
        CHECK(r.in_region == (r.m < 1.0));
    }
    // Near the domain floor the constants blow up but remain finite.
    const auto edge = contraction_constants(Params(-1.0 + 1e-6, -1.0 + 1e-6));
    CHECK(std::isfinite(edge.m));
    CHECK_FALSE(edge.in_region);
}

TEST_CASE("remark closed form: values and domain") {
    CHECK_THAT(remark_closed_form(0.2), Catch::Matchers::WithinAbs(0.841301848327935, 1e-12));
    CHECK_THAT(remark_closed_form(0.5), Catch::Matchers::WithinAbs(3.2149552874029212, 1e-12));
    CHECK(remark_closed_form(1e-12) < 1e-11);  // vanishes with delta
    CHECK_THROWS_AS(remark_closed_form(0.0), std::invalid_argument);
    CHECK_THROWS_AS(remark_closed_form(-0.1), std::invalid_argument);
}

TEST_CASE("M(delta,0) equals the closed form for 1000 random delta in (0,1)") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(1e-8, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double delta = u(rng);
        const double m = contraction_constants(Params(delta, 0.0)).m;
        const double closed = remark_closed_form(delta);
        CHECK(std::abs(m - closed) <= 1e-12 * closed);
    }
}

TEST_CASE("diagonal simplification: M(d,d) = max^2/min^3 * 2|d|") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> u(-0.9, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const double d = u(rng);
        const double m = contraction_constants(Params(d, d)).m;
        const double mx = std::max(1.0, 1.0 + d);
        const double mn = std::min(1.0, 1.0 + d);
        const double expected = mx * mx / (mn * mn * mn) * 2.0 * std::abs(d);
        CHECK(std::abs(m - expected) <= 1e-12 * std::max(expected, 1e-30));
    }
}

TEST_CASE("region_scan lattices") {
    const auto single = region_scan(0.0, 0.0, 0.0, 0.0, 1, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].m == 0.0);
    CHECK(single[0].in_region);

    const auto lattice = region_scan(-0.1, 0.1, -0.1, 0.1, 3, 3);
    REQUIRE(lattice.size() == 9);
    bool found_origin = false;
    for (const auto& pt : lattice) {
        if (pt.delta == 0.0 && pt.gamma == 0.0) {
            found_origin = true;
            CHECK(pt.m == 0.0);
            CHECK(pt.in_region);
        }
    }
    CHECK(found_origin);

    CHECK_THROWS_AS(region_scan(-2.0, 0.0, 0.0, 0.0, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(region_scan(0.0, 1.0, 0.0, 0.0, 1, 1), std::invalid_argument);  // res 1, range
    CHECK_THROWS_AS(region_scan(1.0, 0.0, 0.0, 0.0, 3, 1), std::invalid_argument);  // min > max
}

TEST_CASE("region_boundary at gamma = 0 matches bisection of the closed form") {
    // Oracle: bisect delta(1+delta)^{3/2}(3+delta) = 1 directly.
    double lo = 0.2, hi = 0.3;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (remark_closed_form(mid) > 1.0 ? hi : lo) = mid;
    }
    const double expected = 0.5 * (lo + hi);
    CHECK_THAT(expected, Catch::Matchers::WithinAbs(0.2277409841, 1e-8));

    const auto root = region_boundary(0.0, 1e-6);
    REQUIRE(root.has_value());
    CHECK_THAT(*root, Catch::Matchers::WithinAbs(expected, 1e-6));
}

TEST_CASE("region_boundary structure along the diagonal and absence") {
    // M(0.1, 0.1) = 0.242 < 1, so the boundary at gamma = 0.1 lies above 0.1.
    const auto root = region_boundary(0.1, 1e-6);
    REQUIRE(root.has_value());
    CHECK(*root > 0.1);

    // For large gamma, M(., gamma) >= M(0, gamma) > 1 everywhere: no root.
    CHECK_FALSE(region_boundary(5.0, 1e-6).has_value());
    CHECK_THROWS_AS(region_boundary(0.0, -1.0), std::invalid_argument);
}
