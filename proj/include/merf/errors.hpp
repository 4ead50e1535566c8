#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "merf/grid.hpp"

namespace merf {

/// Iterative solve exhausted its iteration budget. Carries the last iterate
/// (when one exists) and the final residual so callers can inspect how close
/// the run got.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& message, std::optional<GridFunction> last_iterate,
                        double residual)
        : std::runtime_error(message), last_iterate_(std::move(last_iterate)), residual_(residual) {}

    const std::optional<GridFunction>& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    std::optional<GridFunction> last_iterate_;
    double residual_;
};

/// The ODE right-hand side was evaluated where 1 + delta*y is below the
/// numerical floor, i.e. the trajectory left the band where the equation
/// is non-degenerate.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& message, double x, double y)
        : std::runtime_error(message), x_(x), y_(y) {}

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }

private:
    double x_;
    double y_;
};

/// Slope bracketing for the shooting method failed: the terminal value never
/// exceeded the far boundary value within the configured doublings.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace merf
