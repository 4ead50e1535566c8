#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "merf/contraction.hpp"
#include "merf/errors.hpp"
#include "merf/grid.hpp"
#include "merf/picard.hpp"

namespace merf {

struct ShootingOptions {
    std::optional<double> x_max{};        // default: truncation_bound(p, tail_epsilon)
    std::size_t step_count = 20000;       // even, so the recorded grid has an odd point count
    double slope_bracket_hi_start = 2.0;
    double tol_boundary = 1e-12;
    int max_bracket_doublings = 60;
    double tail_epsilon = 1e-16;

    void validate() const {
        if (x_max && !(*x_max > 0.0))
            throw std::invalid_argument("ShootingOptions: x_max must be positive");
        if (step_count < 2 || step_count % 2 != 0)
            throw std::invalid_argument("ShootingOptions: step_count must be even and >= 2");
        if (!(slope_bracket_hi_start > 0.0))
            throw std::invalid_argument("ShootingOptions: slope_bracket_hi_start must be positive");
        if (!(tol_boundary > 0.0))
            throw std::invalid_argument("ShootingOptions: tol_boundary must be positive");
        if (max_bracket_doublings < 0)
            throw std::invalid_argument("ShootingOptions: max_bracket_doublings must be >= 0");
        if (!(tail_epsilon > 0.0))
            throw std::invalid_argument("ShootingOptions: tail_epsilon must be positive");
    }
};

/// The second-order form y'' = -(delta*(y')^2 + 2x(1+gamma*y)y') / (1+delta*y).
/// The denominator must stay above 1e-12; the true solution keeps it above
/// min(1, 1+delta), so tripping the floor means the trajectory left the
/// physical band.
inline double ode_second_derivative(double x, double y, double yp, const Params& p) {
    const double den = 1.0 + p.delta() * y;
    if (den < 1e-12)
        throw SingularityError("ode_second_derivative: 1 + delta*y below floor", x, y);
    return -(p.delta() * yp * yp + 2.0 * x * (1.0 + p.gamma() * y) * yp) / den;
}

/// Fixed-step RK4 trajectory of (y, y') from (0, slope0).
/// Integration stops early when y leaves the escape band [-0.1, 1.5] or the
/// singularity floor trips; the remaining samples are padded with the last
/// computed value and the corresponding flag is set.
struct IvpTrajectory {
    GridFunction y;
    double terminal_y;
    double terminal_yp;
    std::size_t steps_taken;
    bool escaped_high;
    bool escaped_low;
    bool hit_singularity;
};

inline IvpTrajectory integrate_ivp(double slope0, const Params& p, const ShootingOptions& opts) {
    opts.validate();
    if (!(slope0 >= 0.0)) throw std::invalid_argument("integrate_ivp: slope0 must be >= 0");
    const double x_max = opts.x_max ? *opts.x_max : truncation_bound(p, opts.tail_epsilon);
    const std::size_t n = opts.step_count;
    Grid grid = make_uniform_grid(x_max, n + 1);
    const double h = grid.spacing();

    std::vector<double> ys(n + 1, 0.0);
    double y = 0.0;
    double yp = slope0;
    bool escaped_high = false;
    bool escaped_low = false;
    bool singular = false;
    std::size_t steps = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid[i];
        double k1y, k1p, k2y, k2p, k3y, k3p, k4y, k4p;
        try {
            k1y = yp;
            k1p = ode_second_derivative(x, y, yp, p);
            k2y = yp + 0.5 * h * k1p;
            k2p = ode_second_derivative(x + 0.5 * h, y + 0.5 * h * k1y, k2y, p);
            k3y = yp + 0.5 * h * k2p;
            k3p = ode_second_derivative(x + 0.5 * h, y + 0.5 * h * k2y, k3y, p);
            k4y = yp + h * k3p;
            k4p = ode_second_derivative(x + h, y + h * k3y, k4y, p);
        } catch (const SingularityError&) {
            singular = true;
            break;
        }
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if (!std::isfinite(y) || !std::isfinite(yp)) {
            singular = true;
            break;
        }
        ys[i + 1] = y;
        steps = i + 1;
        if (y > 1.5) {
            escaped_high = true;
            break;
        }
        if (y < -0.1) {
            escaped_low = true;
            break;
        }
    }
    for (std::size_t i = steps + 1; i <= n; ++i) ys[i] = ys[steps];
    const double terminal_y = ys[steps];

    return IvpTrajectory{GridFunction(std::move(grid), std::move(ys)),
                         terminal_y,
                         yp,
                         steps,
                         escaped_high,
                         escaped_low,
                         singular};
}

namespace detail {

// Terminal indicator used for bracketing: trajectories that blow upward
// (escape above the band, or hit the singularity after crossing 1) count as
// "above the boundary value", downward escapes count as "below".
inline double terminal_indicator(const IvpTrajectory& t) {
    if (t.escaped_high) return 2.0;
    if (t.hit_singularity && t.terminal_y > 1.0) return 2.0;
    if (t.escaped_low) return -1.0;
    if (t.hit_singularity)
        throw SingularityError("shoot: trajectory hit the singularity floor inside [0,1]",
                               t.y.grid()[t.steps_taken], t.terminal_y);
    return t.terminal_y;
}

}  // namespace detail

/// Solves the boundary value problem by shooting on the initial slope:
/// the upper slope is found by doubling until the terminal value exceeds 1,
/// then bisection drives |y(x_max) - 1| below tol_boundary. The terminal
/// value is checked to behave monotonically in the slope over the bracket.
inline PhiSolution shoot(const Params& p, const ShootingOptions& opts = {}) {
    opts.validate();
    ShootingOptions o = opts;
    if (!o.x_max) o.x_max = truncation_bound(p, opts.tail_epsilon);

    int shots = 0;
    const auto fire = [&](double slope) {
        ++shots;
        return integrate_ivp(slope, p, o);
    };

    double lo = 0.0;
    double t_lo = 0.0;
    double hi = o.slope_bracket_hi_start;
    IvpTrajectory traj = fire(hi);
    double t_hi = detail::terminal_indicator(traj);
    int doublings = 0;
    while (t_hi <= 1.0) {
        if (doublings++ >= o.max_bracket_doublings)
            throw BracketError("shoot: terminal value never exceeded 1 within " +
                               std::to_string(o.max_bracket_doublings) + " doublings");
        lo = hi;
        t_lo = t_hi;
        hi *= 2.0;
        traj = fire(hi);
        t_hi = detail::terminal_indicator(traj);
    }

    constexpr int kMaxBisections = 200;
    for (int it = 0; it < kMaxBisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        traj = fire(mid);
        const double t_mid = detail::terminal_indicator(traj);
        if (t_mid < t_lo - 1e-9 || t_mid > t_hi + 1e-9)
            throw std::runtime_error(
                "shoot: terminal value is not monotone in the initial slope over the bracket");
        if (std::abs(t_mid - 1.0) <= o.tol_boundary) {
            const double m = contraction_constants(p).m;
            detail::validate_phi(traj.y, std::max(10.0 * o.tol_boundary, 1e-10));
            return PhiSolution{p,
                               traj.y,
                               mid,
                               1.0 / mid,
                               SolveMethod::shooting,
                               std::abs(t_mid - 1.0),
                               shots,
                               m < 1.0};
        }
        if (t_mid > 1.0) {
            hi = mid;
            t_hi = t_mid;
        } else {
            lo = mid;
            t_lo = t_mid;
        }
    }
    throw NonConvergenceError("shoot: bisection did not reach tol_boundary", std::nullopt,
                              std::abs(t_hi - 1.0));
}

}  // namespace merf
