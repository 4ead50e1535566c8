#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "merf/contraction.hpp"
#include "merf/errors.hpp"
#include "merf/grid.hpp"

namespace merf {

enum class SolveMethod { picard, shooting };

inline const char* to_string(SolveMethod m) {
    return m == SolveMethod::picard ? "picard" : "shooting";
}

/// A converged solution of the boundary value problem for one parameter
/// pair. derivative_at_zero always equals 1/f_infinity; for the shooting
/// method iterations_or_steps counts IVP integrations, for the fixed-point
/// iteration it counts applications of T. converged_under_guarantee is true
/// only when M(delta,gamma) < 1, i.e. when existence and uniqueness are
/// guaranteed and the a-posteriori error bound applies.
struct PhiSolution {
    Params params;
    GridFunction phi;
    double derivative_at_zero;
    double f_infinity;
    SolveMethod method;
    double error_estimate;
    int iterations_or_steps;
    bool converged_under_guarantee;
};

struct SolverOptions {
    double tol = 1e-10;
    int max_iterations = 200;
    std::size_t grid_points = 2001;
    std::optional<double> x_max_override{};
    double tail_epsilon = 1e-16;

    void validate() const {
        if (!(tol > 0.0)) throw std::invalid_argument("SolverOptions: tol must be positive");
        if (max_iterations < 1)
            throw std::invalid_argument("SolverOptions: max_iterations must be positive");
        if (grid_points < 201 || grid_points % 2 == 0)
            throw std::invalid_argument("SolverOptions: grid_points must be odd and >= 201");
        if (x_max_override && !(*x_max_override > 0.0))
            throw std::invalid_argument("SolverOptions: x_max_override must be positive");
        if (!(tail_epsilon > 0.0))
            throw std::invalid_argument("SolverOptions: tail_epsilon must be positive");
    }
};

/// Truncation point for the half-line domain: the integrand of F decays at
/// least like exp(-c x^2) with c = min(1,1+gamma)/max(1,1+delta), so
/// x_max = sqrt(ln(1/tail_epsilon)/c) keeps the discarded tail below
/// tail_epsilon. Clamped to at least 5.
inline double truncation_bound(const Params& p, double tail_epsilon) {
    if (!(tail_epsilon > 0.0))
        throw std::invalid_argument("truncation_bound: tail_epsilon must be positive");
    const double c = std::min(1.0, 1.0 + p.gamma()) / std::max(1.0, 1.0 + p.delta());
    const double log_term = std::log(1.0 / tail_epsilon);
    if (log_term <= 0.0) return 5.0;
    return std::max(5.0, std::sqrt(log_term / c));
}

namespace detail {

// Discrete invariants of the set K: h(0) = 0 and 0 <= h <= 1.
inline void require_k_element(const GridFunction& h) {
    if (h[0] != 0.0) throw std::invalid_argument("h violates K: h(0) != 0");
    for (double v : h.values()) {
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("h violates K: values outside [0,1]");
    }
}

}  // namespace detail

struct FResult {
    GridFunction f;        // F(x_k; h) at every grid point
    double f_infinity;     // F(x_max; h), the truncation of F(+inf; h)
};

/// F(x;h) = int_0^x exp(-int_0^w 2z(1+gamma h)/(1+delta h) dz) / (1+delta h(w)) dw,
/// evaluated by two chained cumulative Simpson passes (inner exponent first,
/// then the outer integrand).
inline FResult compute_F(const GridFunction& h, const Params& p) {
    detail::require_k_element(h);
    const auto x = h.grid().points();
    const std::size_t n = h.size();

    std::vector<double> inner(n);
    for (std::size_t i = 0; i < n; ++i)
        inner[i] = 2.0 * x[i] * (1.0 + p.gamma() * h[i]) / (1.0 + p.delta() * h[i]);
    const GridFunction exponent = cumulative_integral(GridFunction(h.grid(), std::move(inner)));

    std::vector<double> outer(n);
    for (std::size_t i = 0; i < n; ++i)
        outer[i] = std::exp(-exponent[i]) / (1.0 + p.delta() * h[i]);
    GridFunction f = cumulative_integral(GridFunction(h.grid(), std::move(outer)));

    const double f_infinity = f.values().back();
    return FResult{std::move(f), f_infinity};
}

/// One application of the fixed-point map: (T(h))(x) = F(x;h)/F(x_max;h).
/// Maps K into K; the result is 0 at x = 0 and exactly 1 at x_max.
inline GridFunction apply_T(const GridFunction& h, const Params& p) {
    const FResult fr = compute_F(h, p);
    std::vector<double> v(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) v[i] = fr.f[i] / fr.f_infinity;
    GridFunction t(h.grid(), std::move(v));
    detail::require_k_element(t);
    return t;
}

/// Banach a-posteriori bound M/(1-M) * ||h_{k+1} - h_k||; absent when M >= 1.
inline std::optional<double> posterior_error_bound(double m, double last_step) {
    if (!(m >= 0.0) || !(last_step >= 0.0))
        throw std::invalid_argument("posterior_error_bound: arguments must be nonnegative");
    if (m >= 1.0) return std::nullopt;
    return m / (1.0 - m) * last_step;
}

namespace detail {

inline void validate_phi(const GridFunction& phi, double boundary_tol) {
    if (phi[0] != 0.0) throw std::logic_error("solution violates phi(0) = 0");
    for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
        if (phi[i + 1] - phi[i] < -1e-15)
            throw std::logic_error("solution is not nondecreasing at grid points");
    }
    for (double v : phi.values()) {
        if (v < -1e-15 || v > 1.0 + boundary_tol)
            throw std::logic_error("solution leaves [0,1]");
    }
    if (std::abs(phi.values().back() - 1.0) > boundary_tol)
        throw std::logic_error("solution misses the far boundary value 1");
}

}  // namespace detail

/// Fixed-point iteration h_0 = 0, h_{k+1} = T(h_k). Inside the contraction
/// region the stop rule is the rigorous a-posteriori bound
/// M/(1-M)*||h_{k+1}-h_k|| <= tol; outside it only the Cauchy increment is
/// available, the result carries converged_under_guarantee = false, and no
/// uniqueness claim is made. At least two iterations are always performed so
/// the reported step measures an actual fixed-point residual rather than
/// the distance from the zero start.
inline PhiSolution solve_phi(const Params& p, const SolverOptions& opts = {}) {
    opts.validate();
    const double x_max =
        opts.x_max_override ? *opts.x_max_override : truncation_bound(p, opts.tail_epsilon);
    const Grid grid = make_uniform_grid(x_max, opts.grid_points);
    const double m = contraction_constants(p).m;
    constexpr int kMinIterations = 2;

    GridFunction h = zero_function(grid);
    double step = std::numeric_limits<double>::infinity();
    double f_infinity = 0.0;

    for (int k = 1; k <= opts.max_iterations; ++k) {
        FResult fr = compute_F(h, p);
        std::vector<double> v(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) v[i] = fr.f[i] / fr.f_infinity;
        GridFunction next(grid, std::move(v));

        step = sup_norm_diff(next, h);
        h = std::move(next);
        f_infinity = fr.f_infinity;

        if (k < kMinIterations) continue;
        if (m < 1.0) {
            const double bound = *posterior_error_bound(m, step);
            if (bound <= opts.tol) {
                detail::validate_phi(h, 10.0 * opts.tol);
                return PhiSolution{p,
                                   std::move(h),
                                   1.0 / f_infinity,
                                   f_infinity,
                                   SolveMethod::picard,
                                   bound,
                                   k,
                                   true};
            }
        } else if (step <= opts.tol) {
            detail::validate_phi(h, 10.0 * opts.tol);
            return PhiSolution{p,
                               std::move(h),
                               1.0 / f_infinity,
                               f_infinity,
                               SolveMethod::picard,
                               step,
                               k,
                               false};
        }
    }
    throw NonConvergenceError(
        "solve_phi: no convergence within " + std::to_string(opts.max_iterations) +
            " iterations (last step " + std::to_string(step) + ")",
        std::move(h), step);
}

}  // namespace merf
