#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "merf/contraction.hpp"
#include "merf/grid.hpp"
#include "merf/picard.hpp"

namespace merf {

namespace detail {

// erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_k (2x^2)^k / (1*3*...*(2k+1)).
// All terms are positive, so there is no cancellation; used for x <= 3.
inline double erf_maclaurin(double x) {
    const double two_x2 = 2.0 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= two_x2 / static_cast<double>(2 * k + 1);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return 2.0 * x / std::sqrt(M_PI) * std::exp(-x * x) * sum;
}

// Complement via the classical continued fraction
//   sqrt(pi) e^{x^2} erfc(x) = 1/(x+ (1/2)/(x+ (2/2)/(x+ (3/2)/(x+ ...)))),
// evaluated backward from a fixed depth; rapidly convergent for x > 3.
inline double erfc_continued_fraction(double x) {
    double f = x;
    for (int k = 60; k >= 1; --k) f = x + 0.5 * static_cast<double>(k) / f;
    return std::exp(-x * x) / (std::sqrt(M_PI) * f);
}

}  // namespace detail

/// Classical error function on the half line, accurate to 1e-14 absolute:
/// positive-term Maclaurin series up to x = 3, continued-fraction complement
/// beyond.
inline double erf_reference(double x) {
    if (!(x >= 0.0)) throw std::domain_error("erf_reference: x must be >= 0");
    if (x <= 3.0) return detail::erf_maclaurin(x);
    return 1.0 - detail::erfc_continued_fraction(x);
}

/// Verdicts of the qualitative theory on a computed solution: boundedness in
/// [0,1] and monotonicity always, concavity only when delta >= 0 (the only
/// case in which it is asserted). Residuals are diagnostics, not verdicts.
struct PropertyReport {
    bool bounds_ok;
    bool monotone_ok;
    std::optional<bool> concave_ok;   // present iff delta >= 0
    double fixed_point_residual;
    double ode_residual;
    double max_violation;
};

/// Residual of the conservative form |d/dx[(1+delta*y)y'] + 2x(1+gamma*y)y'|
/// with central differences, maximized over interior points (3 excluded at
/// each end). Second order in the grid spacing for a smooth solution.
inline double ode_residual(const GridFunction& y, const Params& p) {
    const std::size_t n = y.size();
    if (n < 9) throw std::invalid_argument("ode_residual: grid too small");
    const auto x = y.grid().points();
    const double h = y.grid().spacing();

    std::vector<double> yp(n, 0.0);
    std::vector<double> q(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        yp[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
        q[i] = (1.0 + p.delta() * y[i]) * yp[i];
    }
    double r = 0.0;
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const double dq = (q[i + 1] - q[i - 1]) / (2.0 * h);
        r = std::max(r, std::abs(dq + 2.0 * x[i] * (1.0 + p.gamma() * y[i]) * yp[i]));
    }
    return r;
}

inline double ode_residual(const PhiSolution& sol, const Params& p) {
    return ode_residual(sol.phi, p);
}

/// Checks the solution against the guaranteed properties. The concavity test
/// compares second central differences against tol times the largest
/// magnitude of the discrete second derivative (which sits near x = 0), so a
/// flat tail contributes only noise that the scaling absorbs.
inline PropertyReport check_properties(const PhiSolution& sol, const Params& p, double tol) {
    if (!(sol.params == p))
        throw std::invalid_argument("check_properties: params do not match the solution");
    if (!(tol > 0.0)) throw std::invalid_argument("check_properties: tol must be positive");
    const auto& phi = sol.phi;
    const std::size_t n = phi.size();
    const double h = phi.grid().spacing();

    double bounds_excess = 0.0;
    for (double v : phi.values())
        bounds_excess = std::max({bounds_excess, -v, v - 1.0});
    const bool bounds_ok = bounds_excess <= tol;

    double monotone_excess = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        monotone_excess = std::max(monotone_excess, -(phi[i + 1] - phi[i]));
    const bool monotone_ok = monotone_excess <= tol;

    std::optional<bool> concave_ok{};
    double concave_excess = 0.0;
    if (p.delta() >= 0.0) {
        double scale = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i)
            scale = std::max(scale, std::abs(phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h));
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double d2 = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h);
            if (scale > 0.0) concave_excess = std::max(concave_excess, d2 / scale);
        }
        concave_ok = concave_excess <= tol;
    }

    double fp_residual;
    try {
        fp_residual = sup_norm_diff(apply_T(phi, p), phi);
    } catch (const std::invalid_argument&) {
        // phi is not even a K element; bounds_ok is already false.
        fp_residual = std::numeric_limits<double>::max();
    }

    const double max_violation = std::max({bounds_excess, monotone_excess, concave_excess});
    return PropertyReport{bounds_ok,   monotone_ok,          concave_ok,
                          fp_residual, ode_residual(sol, p), max_violation};
}

/// Sup-norm distance between two solutions of the same problem, evaluated at
/// the grid points of the finer solution over the common domain (the coarser
/// one is interpolated).
inline double compare_solutions(const PhiSolution& a, const PhiSolution& b) {
    if (!(a.params == b.params))
        throw std::invalid_argument("compare_solutions: parameter pairs differ");
    const bool a_finer = a.phi.grid().spacing() <= b.phi.grid().spacing();
    const GridFunction& fine = a_finer ? a.phi : b.phi;
    const GridFunction& coarse = a_finer ? b.phi : a.phi;
    const double x_common = std::min(fine.grid().x_max(), coarse.grid().x_max());

    double m = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        const double x = fine.grid()[i];
        if (x > x_common) break;
        m = std::max(m, std::abs(fine[i] - eval(coarse, x)));
    }
    return m;
}

}  // namespace merf
