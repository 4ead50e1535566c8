#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "merf/contraction.hpp"
#include "merf/errors.hpp"
#include "merf/grid.hpp"
#include "merf/picard.hpp"
#include "merf/shooting.hpp"

namespace merf {

/// Linear thermal laws of the phase-change model. theta_i is the uniform
/// initial temperature, theta_o the fixed boundary temperature; in the
/// one-phase solidification setting theta_o < theta_i = the phase-change
/// temperature. alpha and beta are the dimensionless slopes of the specific
/// heat and the thermal conductivity.
struct ThermalCoefficients {
    double c_ref;     // reference specific heat, J kg^-1 K^-1, > 0
    double k_ref;     // reference conductivity, W m^-1 K^-1, > 0
    double alpha;
    double beta;
    double theta_i;   // initial temperature, K
    double theta_o;   // boundary temperature, K

    ThermalCoefficients(double c_ref_, double k_ref_, double alpha_, double beta_,
                        double theta_i_, double theta_o_)
        : c_ref(c_ref_), k_ref(k_ref_), alpha(alpha_), beta(beta_),
          theta_i(theta_i_), theta_o(theta_o_) {
        if (!(c_ref > 0.0)) throw std::invalid_argument("ThermalCoefficients: c_ref must be > 0");
        if (!(k_ref > 0.0)) throw std::invalid_argument("ThermalCoefficients: k_ref must be > 0");
        if (theta_i == theta_o)
            throw std::invalid_argument("ThermalCoefficients: theta_i must differ from theta_o");
    }
};

/// c(theta) = c_ref * (1 + alpha*(theta - theta_o)/(theta_i - theta_o)).
inline double specific_heat(double theta, const ThermalCoefficients& tc) {
    const double v = tc.c_ref * (1.0 + tc.alpha * (theta - tc.theta_o) / (tc.theta_i - tc.theta_o));
    if (!(v > 0.0))
        throw std::domain_error("specific_heat: nonpositive value at this temperature");
    return v;
}

/// k(theta) = k_ref * (1 + beta*(theta - theta_o)/(theta_i - theta_o)).
inline double thermal_conductivity(double theta, const ThermalCoefficients& tc) {
    const double v = tc.k_ref * (1.0 + tc.beta * (theta - tc.theta_o) / (tc.theta_i - tc.theta_o));
    if (!(v > 0.0))
        throw std::domain_error("thermal_conductivity: nonpositive value at this temperature");
    return v;
}

/// Inputs (alpha, beta, lambda) and the solved consistency triple
/// (delta, gamma, phi_at_lambda) of the one-phase example, where lambda is
/// the dimensionless front coefficient s(t)/(2 sqrt(a t)) (s the free
/// boundary, a the solid-phase diffusivity; both enter only through lambda).
/// At the solution gamma*phi = alpha and delta*phi = beta hold to the sweep
/// tolerance, recorded in residual_alpha / residual_beta.
struct StefanPhaseParams {
    double alpha;
    double beta;
    double lambda;
    double delta;
    double gamma;
    double phi_at_lambda;
    double residual_alpha;
    double residual_beta;
    int sweeps;
};

struct StefanOptions {
    int max_sweeps = 100;
    SolverOptions solver{};
    ShootingOptions shooting{};
};

namespace detail {

// Pulls an update back toward the previous iterate until it clears the
// parameter floor. Starting iterates are valid, so this terminates unless
// the target itself sits outside the domain, which the sweep cap reports.
inline double damp_into_domain(double previous, double candidate, const char* name) {
    for (int i = 0; i < 64 && 1.0 + candidate < kParamFloor; ++i)
        candidate = 0.5 * (previous + candidate);
    if (1.0 + candidate < kParamFloor)
        throw std::domain_error(std::string("solve_phase_parameters: ") + name +
                                " iterate left (-1,+inf); inputs are infeasible");
    return candidate;
}

}  // namespace detail

/// Solves gamma*Phi(lambda) = alpha, delta*Phi(lambda) = beta for
/// (delta, gamma) by the damped fixed-point sweep
///   delta <- beta/Phi(lambda), gamma <- alpha/Phi(lambda),
/// starting from (beta, alpha). Phi is re-solved from scratch every sweep:
/// by the fixed-point iteration when M < 1, by shooting otherwise.
inline StefanPhaseParams solve_phase_parameters(double alpha, double beta, double lambda,
                                                double tol, const StefanOptions& opts = {}) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_phase_parameters: tol must be positive");
    if (opts.max_sweeps < 1)
        throw std::invalid_argument("solve_phase_parameters: max_sweeps must be positive");
    if (1.0 + beta < kParamFloor || 1.0 + alpha < kParamFloor)
        throw std::domain_error(
            "solve_phase_parameters: inputs are infeasible (|delta| >= |beta| and "
            "|gamma| >= |alpha| would leave (-1,+inf))");

    double delta = beta;
    double gamma = alpha;
    double residual_alpha = 0.0;
    double residual_beta = 0.0;

    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        const Params p(delta, gamma);

        // Keep lambda comfortably inside the truncated domain.
        SolverOptions solver = opts.solver;
        ShootingOptions shooting = opts.shooting;
        const double needed = 1.05 * lambda + 1.0;
        if (!solver.x_max_override && truncation_bound(p, solver.tail_epsilon) < needed)
            solver.x_max_override = needed;
        if (!shooting.x_max && truncation_bound(p, shooting.tail_epsilon) < needed)
            shooting.x_max = needed;

        const bool in_region = contraction_constants(p).in_region;
        const PhiSolution sol = in_region ? solve_phi(p, solver) : shoot(p, shooting);
        const double phi_lambda = eval(sol.phi, lambda);

        residual_alpha = std::abs(gamma * phi_lambda - alpha);
        residual_beta = std::abs(delta * phi_lambda - beta);
        if (residual_alpha <= tol && residual_beta <= tol) {
            if (alpha != 0.0 && (gamma > 0.0) != (alpha > 0.0))
                throw std::runtime_error("solve_phase_parameters: sign(gamma) != sign(alpha)");
            if (beta != 0.0 && (delta > 0.0) != (beta > 0.0))
                throw std::runtime_error("solve_phase_parameters: sign(delta) != sign(beta)");
            return StefanPhaseParams{alpha,          beta,          lambda,
                                     delta,          gamma,         phi_lambda,
                                     residual_alpha, residual_beta, sweep};
        }

        delta = detail::damp_into_domain(delta, beta / phi_lambda, "delta");
        gamma = detail::damp_into_domain(gamma, alpha / phi_lambda, "gamma");
    }
    throw NonConvergenceError("solve_phase_parameters: no convergence within " +
                                  std::to_string(opts.max_sweeps) + " sweeps",
                              std::nullopt, std::max(residual_alpha, residual_beta));
}

}  // namespace merf
