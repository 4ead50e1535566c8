#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace merf {

/// Uniform discretization of [0, x_max]. The point count is odd and >= 3 so
/// that every pair of consecutive intervals supports the composite Simpson
/// rule, and the first point is exactly 0.
class Grid {
public:
    /// Validates the full set of grid invariants: starts at 0, strictly
    /// increasing, odd count >= 3, uniform spacing to 1e-12 relative.
    explicit Grid(std::vector<double> points) : points_(std::move(points)) {
        const std::size_t n = points_.size();
        if (n < 3) throw std::invalid_argument("Grid: needs at least 3 points");
        if (n % 2 == 0) throw std::invalid_argument("Grid: point count must be odd");
        if (points_.front() != 0.0) throw std::invalid_argument("Grid: first point must be 0");
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!std::isfinite(points_[i + 1]) || points_[i + 1] <= points_[i])
                throw std::invalid_argument("Grid: points must be finite and strictly increasing");
        }
        spacing_ = points_[1] - points_[0];
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs((points_[i + 1] - points_[i]) - spacing_) > 1e-12 * spacing_)
                throw std::invalid_argument("Grid: spacing is not uniform");
        }
    }

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    std::span<const double> points() const noexcept { return points_; }
    double x_max() const noexcept { return points_.back(); }
    double spacing() const noexcept { return spacing_; }

    friend bool operator==(const Grid& a, const Grid& b) { return a.points_ == b.points_; }

private:
    std::vector<double> points_;
    double spacing_;
};

namespace detail {

// Rounds the spacing up to a value with 16 trailing zero mantissa bits, so
// integer multiples up to 2^16 are exact and the grid is uniform to the last
// bit. Raises the value by less than 2^-37 relative; rounding up keeps the
// nominal x_max inside the constructed domain.
inline double snap_spacing(double dx) {
    std::uint64_t bits;
    std::memcpy(&bits, &dx, sizeof bits);
    if (bits & 0xFFFF) bits = (bits & ~std::uint64_t{0xFFFF}) + 0x10000;
    std::memcpy(&dx, &bits, sizeof dx);
    return dx;
}

}  // namespace detail

/// n equally spaced points from 0 to x_max inclusive; n must be odd and >= 3.
/// The endpoint is hit exactly whenever that is compatible with the uniform-
/// spacing invariant; at point counts where rounding makes the two goals
/// collide, the spacing is snapped to an exactly representable value instead
/// and the endpoint moves up by under 1e-11 relative.
inline Grid make_uniform_grid(double x_max, std::size_t n) {
    if (!(x_max > 0.0) || !std::isfinite(x_max))
        throw std::invalid_argument("make_uniform_grid: x_max must be positive");
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("make_uniform_grid: n must be odd and >= 3");
    if (n > 65535) throw std::invalid_argument("make_uniform_grid: n too large for exact spacing");

    const double dx = x_max / static_cast<double>(n - 1);
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i) * dx;
    pts.back() = x_max;
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        worst = std::max(worst, std::abs((pts[i + 1] - pts[i]) - dx));
    if (worst <= 1e-12 * dx) return Grid(std::move(pts));

    const double snapped = detail::snap_spacing(dx);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i) * snapped;
    return Grid(std::move(pts));
}

/// A real function sampled on a Grid. Values are immutable after
/// construction and must be finite everywhere.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw std::invalid_argument("GridFunction: values/grid size mismatch");
        for (double v : values_) {
            if (!std::isfinite(v))
                throw std::invalid_argument("GridFunction: values must be finite");
        }
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Sampled zero function, the usual starting iterate.
inline GridFunction zero_function(const Grid& grid) {
    return GridFunction(grid, std::vector<double>(grid.size(), 0.0));
}

namespace detail {

// Shape-preserving tangents in the Fritsch-Carlson style: the harmonic mean
// of adjacent secants where they share a sign, zero otherwise. These stay
// inside the monotonicity region, so no global limiting sweep is needed and
// each tangent depends only on its two neighbouring secants.
inline double pchip_interior_slope(double secant_left, double secant_right) {
    if (secant_left == 0.0 || secant_right == 0.0) return 0.0;
    if ((secant_left > 0.0) != (secant_right > 0.0)) return 0.0;
    return 2.0 * secant_left * secant_right / (secant_left + secant_right);
}

// One-sided parabolic endpoint tangent with the standard shape clamps.
inline double pchip_edge_slope(double secant_near, double secant_far) {
    double d = 0.5 * (3.0 * secant_near - secant_far);
    if (secant_near == 0.0) return 0.0;
    if ((d > 0.0) != (secant_near > 0.0)) return 0.0;
    if ((secant_near > 0.0) != (secant_far > 0.0) && std::abs(d) > 3.0 * std::abs(secant_near))
        return 3.0 * secant_near;
    return d;
}

inline double secant(const GridFunction& f, std::size_t i) {
    return (f[i + 1] - f[i]) / (f.grid()[i + 1] - f.grid()[i]);
}

inline double pchip_slope_at(const GridFunction& f, std::size_t i) {
    const std::size_t last = f.size() - 1;
    if (i == 0) return pchip_edge_slope(secant(f, 0), secant(f, 1));
    if (i == last) return pchip_edge_slope(secant(f, last - 1), secant(f, last - 2));
    return pchip_interior_slope(secant(f, i - 1), secant(f, i));
}

}  // namespace detail

/// Monotone-preserving piecewise-cubic interpolation of the samples.
/// Exact at grid points; nondecreasing data yields a nondecreasing
/// interpolant, and values never leave the range of the samples.
inline double eval(const GridFunction& f, double x) {
    const auto pts = f.grid().points();
    if (!(x >= 0.0) || x > f.grid().x_max())
        throw std::domain_error("eval: x outside [0, x_max]");

    auto it = std::upper_bound(pts.begin(), pts.end(), x);
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    i = (i == 0) ? 0 : i - 1;
    if (i >= f.size() - 1) i = f.size() - 2;

    if (x == pts[i]) return f[i];
    if (x == pts[i + 1]) return f[i + 1];

    const double h = pts[i + 1] - pts[i];
    const double t = (x - pts[i]) / h;
    const double m0 = detail::pchip_slope_at(f, i);
    const double m1 = detail::pchip_slope_at(f, i + 1);

    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * f[i] + h10 * h * m0 + h01 * f[i + 1] + h11 * h * m1;
}

/// max over grid points of |f - g|. The two functions must share the grid.
inline double sup_norm_diff(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid() == g.grid()))
        throw std::invalid_argument("sup_norm_diff: functions live on different grids");
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
    return m;
}

/// Cumulative integral g(x_k) = integral of f from 0 to x_k, by composite
/// Simpson over interval pairs. Values at odd k come from the quadratic
/// through the three surrounding points (the standard single-interval
/// correction); values at even k are fourth-order accurate.
inline GridFunction cumulative_integral(const GridFunction& f) {
    const std::size_t n = f.size();
    const double h = f.grid().spacing();
    std::vector<double> g(n, 0.0);
    for (std::size_t k = 2; k < n; k += 2)
        g[k] = g[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
    for (std::size_t k = 1; k < n; k += 2)
        g[k] = g[k - 1] + h / 12.0 * (5.0 * f[k - 1] + 8.0 * f[k] - f[k + 1]);
    return GridFunction(f.grid(), std::move(g));
}

}  // namespace merf
