#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace merf {

/// Numerical floor on 1+delta and 1+gamma. The parameter domain is the open
/// interval (-1, +inf); this close to -1 the contraction constants blow up
/// and the quadrature loses meaning, so such inputs are rejected outright.
inline constexpr double kParamFloor = 1e-6;

/// The parameter pair (delta, gamma) of the boundary value problem
/// ((1+delta*y)y')' + 2x(1+gamma*y)y' = 0 on the half line. delta scales the
/// conductivity term, gamma the capacity term; both must exceed -1.
class Params {
public:
    Params(double delta, double gamma) : delta_(delta), gamma_(gamma) {
        if (!std::isfinite(delta) || 1.0 + delta < kParamFloor)
            throw std::invalid_argument("delta outside (-1,+inf)");
        if (!std::isfinite(gamma) || 1.0 + gamma < kParamFloor)
            throw std::invalid_argument("gamma outside (-1,+inf)");
    }

    double delta() const noexcept { return delta_; }
    double gamma() const noexcept { return gamma_; }

    friend bool operator==(const Params& a, const Params& b) {
        return a.delta_ == b.delta_ && a.gamma_ == b.gamma_;
    }

private:
    double delta_;
    double gamma_;
};

/// The constants controlling the fixed-point map T on the set K:
///   m1 bounds F(x;h) from above,
///   m2 bounds 1/F(+inf;h) from above,
///   m3 is the Lipschitz factor of F in h,
///   m = 2*m2*m3 is the contraction constant of T.
/// m < 1 guarantees existence and uniqueness of the solution.
struct ContractionReport {
    double m1;
    double m2;
    double m3;
    double m;
    bool in_region;
};

/// Evaluates M1, M2, M3 and M = 2*M2*M3 for the given parameters. M is also
/// recomputed through its closed single-expression form as a guard against
/// transcription errors; the two routes must agree to 1e-14 relative.
inline ContractionReport contraction_constants(const Params& p) {
    const double sqrt_pi = std::sqrt(M_PI);
    const double max_d = std::max(1.0, 1.0 + p.delta());
    const double min_d = std::min(1.0, 1.0 + p.delta());
    const double max_g = std::max(1.0, 1.0 + p.gamma());
    const double min_g = std::min(1.0, 1.0 + p.gamma());

    const double bracket =
        2.0 * std::abs(p.delta()) +
        std::abs(p.delta() - p.gamma()) * max_d / (min_d * min_g);

    const double m1 = sqrt_pi * std::sqrt(max_d) / (2.0 * min_d * std::sqrt(min_g));
    const double m2 = 2.0 * max_d * std::sqrt(max_g) / (sqrt_pi * std::sqrt(min_d));
    const double m3 =
        sqrt_pi * std::sqrt(max_d) / (4.0 * min_d * min_d * std::sqrt(min_g)) * bracket;
    const double m = 2.0 * m2 * m3;

    const double m_direct = std::pow(max_d, 1.5) * std::sqrt(max_g) /
                            (std::pow(min_d, 2.5) * std::sqrt(min_g)) * bracket;
    if (std::abs(m - m_direct) > 1e-14 * std::max({m, m_direct, 1.0}))
        throw std::logic_error("contraction_constants: M self-check failed");

    return ContractionReport{m1, m2, m3, m, m < 1.0};
}

/// The closed form delta*(1+delta)^{3/2}*(3+delta), which equals M(delta, 0)
/// for delta > 0.
inline double remark_closed_form(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("remark_closed_form: delta must be > 0");
    return delta * std::pow(1.0 + delta, 1.5) * (3.0 + delta);
}

struct RegionPoint {
    double delta;
    double gamma;
    double m;
    bool in_region;
};

namespace detail {

inline std::vector<double> scan_axis(double lo, double hi, std::size_t resolution,
                                     const char* name) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi)
        throw std::invalid_argument(std::string("region_scan: bad ") + name + " range");
    if (1.0 + lo < kParamFloor)
        throw std::invalid_argument(std::string("region_scan: ") + name +
                                    " range outside (-1,+inf)");
    if (lo == hi) return {lo};
    if (resolution < 2)
        throw std::invalid_argument(std::string("region_scan: ") + name +
                                    " resolution must be >= 2 for a nondegenerate range");
    std::vector<double> pts(resolution);
    const double step = (hi - lo) / static_cast<double>(resolution - 1);
    for (std::size_t i = 0; i < resolution; ++i) pts[i] = lo + static_cast<double>(i) * step;
    pts.back() = hi;
    return pts;
}

}  // namespace detail

/// Rectangular lattice of contraction constants over
/// [delta_min, delta_max] x [gamma_min, gamma_max], gamma varying fastest.
/// A degenerate range ({lo == hi}) collapses to a single point on that axis.
inline std::vector<RegionPoint> region_scan(double delta_min, double delta_max,
                                            double gamma_min, double gamma_max,
                                            std::size_t delta_resolution,
                                            std::size_t gamma_resolution) {
    const auto deltas = detail::scan_axis(delta_min, delta_max, delta_resolution, "delta");
    const auto gammas = detail::scan_axis(gamma_min, gamma_max, gamma_resolution, "gamma");
    std::vector<RegionPoint> out;
    out.reserve(deltas.size() * gammas.size());
    for (double d : deltas) {
        for (double g : gammas) {
            const auto r = contraction_constants(Params(d, g));
            out.push_back(RegionPoint{d, g, r.m, r.in_region});
        }
    }
    return out;
}

/// For fixed gamma, the positive root delta*(gamma) of M(delta, gamma) = 1:
/// bracketed by doubling upward from delta = 0, then bisected to width tol.
/// Absent when no sign change of M - 1 is found up to delta = 10 (in
/// particular when M(0, gamma) >= 1 already).
inline std::optional<double> region_boundary(double gamma, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("region_boundary: tol must be positive");
    const auto m_at = [gamma](double d) { return contraction_constants(Params(d, gamma)).m; };

    constexpr double kDeltaCap = 10.0;
    double lo = 0.0;
    double f_lo = m_at(lo) - 1.0;
    if (f_lo >= 0.0) return std::nullopt;

    double hi = 0.01;
    double f_hi = m_at(hi) - 1.0;
    while (f_hi < 0.0) {
        if (hi >= kDeltaCap) return std::nullopt;
        lo = hi;
        f_lo = f_hi;
        hi = std::min(2.0 * hi, kDeltaCap);
        f_hi = m_at(hi) - 1.0;
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = m_at(mid) - 1.0;
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace merf
