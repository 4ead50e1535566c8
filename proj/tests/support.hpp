#pragma once

// Shared helpers for the test suites. The quadrature here is deliberately
// independent of merf::cumulative_integral so it can serve as an oracle.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "merf/grid.hpp"

namespace testsupport {

/// Plain composite Simpson on [a, b] with n (even) subintervals.
template <typename F>
double independent_simpson(F f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
    return sum * h / 3.0;
}

template <typename F>
merf::GridFunction sample(const merf::Grid& grid, F f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
    return merf::GridFunction(grid, std::move(v));
}

/// Random element of K: values in [0,1], first value 0. Monotone variants
/// are normalized running sums; non-monotone variants are plain uniforms.
inline merf::GridFunction random_k_element(const merf::Grid& grid, std::mt19937& rng,
                                           bool monotone) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(grid.size(), 0.0);
    if (monotone) {
        double acc = 0.0;
        for (std::size_t i = 1; i < grid.size(); ++i) {
            acc += u(rng);
            v[i] = acc;
        }
        const double top = u(rng);  // final value in (0,1], keeps variety
        for (std::size_t i = 1; i < grid.size(); ++i) v[i] = v[i] / acc * std::max(top, 0.2);
    } else {
        for (std::size_t i = 1; i < grid.size(); ++i) v[i] = u(rng);
    }
    return merf::GridFunction(grid, std::move(v));
}

}  // namespace testsupport
