#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "merf/analysis.hpp"
#include "merf/contraction.hpp"
#include "merf/picard.hpp"
#include "merf/stefan.hpp"

namespace merf {

/// 17-significant-digit decimal rendering, lossless for doubles.
inline std::string format_full_precision(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void to_json(nlohmann::json& j, const ContractionReport& r) {
    j = nlohmann::json{
        {"m1", r.m1}, {"m2", r.m2}, {"m3", r.m3}, {"m", r.m}, {"in_region", r.in_region}};
}

inline void to_json(nlohmann::json& j, const PropertyReport& r) {
    j = nlohmann::json{{"bounds_ok", r.bounds_ok},
                       {"monotone_ok", r.monotone_ok},
                       {"fixed_point_residual", r.fixed_point_residual},
                       {"ode_residual", r.ode_residual},
                       {"max_violation", r.max_violation}};
    if (r.concave_ok)
        j["concave_ok"] = *r.concave_ok;
    else
        j["concave_ok"] = nullptr;
}

inline void to_json(nlohmann::json& j, const StefanPhaseParams& s) {
    j = nlohmann::json{{"alpha", s.alpha},
                       {"beta", s.beta},
                       {"lambda", s.lambda},
                       {"delta", s.delta},
                       {"gamma", s.gamma},
                       {"phi_at_lambda", s.phi_at_lambda},
                       {"residual_alpha", s.residual_alpha},
                       {"residual_beta", s.residual_beta},
                       {"sweeps", s.sweeps}};
}

/// Scalar summary of a solution (the sampled curve itself is emitted as CSV).
inline nlohmann::json solution_summary(const PhiSolution& sol) {
    return nlohmann::json{{"delta", sol.params.delta()},
                          {"gamma", sol.params.gamma()},
                          {"method", to_string(sol.method)},
                          {"derivative_at_zero", sol.derivative_at_zero},
                          {"f_infinity", sol.f_infinity},
                          {"error_estimate", sol.error_estimate},
                          {"iterations_or_steps", sol.iterations_or_steps},
                          {"converged_under_guarantee", sol.converged_under_guarantee},
                          {"x_max", sol.phi.grid().x_max()},
                          {"grid_points", sol.phi.size()}};
}

}  // namespace merf
