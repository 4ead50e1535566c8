// Command-line front end: solves the modified error function BVP, maps the
// guaranteed parameter region, verifies solution properties, and solves the
// phase-change parameter-consistency system. Emits CSV/JSON data files;
// plotting is left to external tools.
//
// Exit codes: 0 = success under the contraction guarantee (M < 1),
//             2 = success without guarantee (M >= 1),
//             1 = failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "merf/merf.hpp"
#include "merf/serialize.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNoGuarantee = 2;

using merf::format_full_precision;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

// Sidecar metadata next to a data file; the data file itself stays free of
// anything run-dependent so identical inputs give identical bytes.
void write_sidecar(const std::string& path, const nlohmann::json& meta) {
    if (path.empty()) return;
    std::ofstream out(path + ".meta.json", std::ios::binary);
    if (out) out << meta.dump(2) << "\n";
}

struct SolveFlags {
    double tol = 1e-10;
    std::size_t grid_points = 2001;
    double x_max = 0.0;  // 0 = automatic truncation
    void apply(merf::SolverOptions& s, merf::ShootingOptions& sh) const {
        s.tol = tol;
        s.grid_points = grid_points;
        if (x_max > 0.0) {
            s.x_max_override = x_max;
            sh.x_max = x_max;
        }
    }
};

std::string csv_phi_single(const merf::PhiSolution& sol) {
    std::ostringstream os;
    os << "x,phi\n";
    for (std::size_t i = 0; i < sol.phi.size(); ++i)
        os << format_full_precision(sol.phi.grid()[i]) << ','
           << format_full_precision(sol.phi[i]) << '\n';
    return os.str();
}

nlohmann::json json_phi_single(const merf::PhiSolution& sol) {
    std::vector<double> xs(sol.phi.grid().points().begin(), sol.phi.grid().points().end());
    std::vector<double> ys(sol.phi.values().begin(), sol.phi.values().end());
    nlohmann::json j = merf::solution_summary(sol);
    j["x"] = xs;
    j["phi"] = ys;
    return j;
}

int run_phi(double delta, double gamma, const std::string& method, const SolveFlags& flags,
            const std::string& output, const std::string& format) {
    const merf::Params p(delta, gamma);
    merf::SolverOptions sopts;
    merf::ShootingOptions shopts;
    flags.apply(sopts, shopts);
    const bool in_region = merf::contraction_constants(p).in_region;

    if (method == "both") {
        const auto pic = merf::solve_phi(p, sopts);
        const auto sho = merf::shoot(p, shopts);
        std::ostringstream os;
        os << "x,phi_picard,phi_shooting,diff\n";
        for (std::size_t i = 0; i < pic.phi.size(); ++i) {
            const double x = pic.phi.grid()[i];
            const double a = pic.phi[i];
            const double b = merf::eval(sho.phi, std::min(x, sho.phi.grid().x_max()));
            os << format_full_precision(x) << ',' << format_full_precision(a) << ','
               << format_full_precision(b) << ',' << format_full_precision(std::abs(a - b))
               << '\n';
        }
        write_text(output, os.str());
        write_sidecar(output, nlohmann::json{{"command", "phi"},
                                             {"method", "both"},
                                             {"picard", merf::solution_summary(pic)},
                                             {"shooting", merf::solution_summary(sho)},
                                             {"m", merf::contraction_constants(p).m}});
        return in_region ? kExitSuccess : kExitNoGuarantee;
    }

    const auto sol = (method == "shooting") ? merf::shoot(p, shopts) : merf::solve_phi(p, sopts);
    if (format == "json")
        write_text(output, json_phi_single(sol).dump(2) + "\n");
    else
        write_text(output, csv_phi_single(sol));
    write_sidecar(output, nlohmann::json{{"command", "phi"},
                                         {"summary", merf::solution_summary(sol)},
                                         {"m", merf::contraction_constants(p).m}});
    return sol.converged_under_guarantee ? kExitSuccess : kExitNoGuarantee;
}

int run_region(double delta_min, double delta_max, double gamma_min, double gamma_max,
               std::size_t resolution, const std::string& output, double boundary_tol) {
    const auto points =
        merf::region_scan(delta_min, delta_max, gamma_min, gamma_max, resolution, resolution);
    std::ostringstream os;
    os << "delta,gamma,M,in_region\n";
    for (const auto& pt : points)
        os << format_full_precision(pt.delta) << ',' << format_full_precision(pt.gamma) << ','
           << format_full_precision(pt.m) << ',' << (pt.in_region ? 1 : 0) << '\n';
    write_text(output, os.str());

    // Boundary curve delta*(gamma) on the same gamma lattice, where it exists.
    std::ostringstream bs;
    bs << "gamma,delta_star\n";
    double prev_gamma = std::nan("");
    for (const auto& pt : points) {
        if (pt.gamma == prev_gamma) continue;
        prev_gamma = pt.gamma;
        if (const auto root = merf::region_boundary(pt.gamma, boundary_tol))
            bs << format_full_precision(pt.gamma) << ',' << format_full_precision(*root) << '\n';
    }
    std::filesystem::path main_path(output);
    std::filesystem::path boundary_path = main_path.parent_path() /
                                          (main_path.stem().string() + ".boundary" +
                                           main_path.extension().string());
    write_text(boundary_path.string(), bs.str());

    write_sidecar(output, nlohmann::json{{"command", "region"},
                                         {"delta_range", {delta_min, delta_max}},
                                         {"gamma_range", {gamma_min, gamma_max}},
                                         {"resolution", resolution},
                                         {"boundary_file", boundary_path.string()},
                                         {"records", points.size()}});
    return kExitSuccess;
}

int run_verify(double delta, double gamma, const SolveFlags& flags, const std::string& output,
               const std::string& selftest) {
    if (selftest == "corrupt") {
        // Constructed failure: bump one interior value of an honest solution
        // and require the property checks to notice.
        auto sol = merf::solve_phi(merf::Params(0.0, 0.0));
        std::vector<double> vals(sol.phi.values().begin(), sol.phi.values().end());
        vals[vals.size() / 3] += 0.1;
        const merf::PhiSolution corrupted{sol.params,
                                          merf::GridFunction(sol.phi.grid(), std::move(vals)),
                                          sol.derivative_at_zero,
                                          sol.f_infinity,
                                          sol.method,
                                          sol.error_estimate,
                                          sol.iterations_or_steps,
                                          sol.converged_under_guarantee};
        const auto rep = merf::check_properties(corrupted, sol.params, 1e-8);
        const bool ok = rep.bounds_ok && rep.monotone_ok && (!rep.concave_ok || *rep.concave_ok);
        nlohmann::json j{{"selftest", "corrupt"}, {"report", rep}, {"pass", ok}};
        write_text(output, j.dump(2) + "\n");
        return ok ? kExitSuccess : kExitFailure;  // the corruption must be flagged
    }

    const merf::Params p(delta, gamma);
    merf::SolverOptions sopts;
    merf::ShootingOptions shopts;
    flags.apply(sopts, shopts);
    const auto constants = merf::contraction_constants(p);

    std::optional<merf::PhiSolution> pic;
    std::string picard_error;
    try {
        pic = merf::solve_phi(p, sopts);
    } catch (const std::exception& e) {
        picard_error = e.what();
    }
    std::optional<merf::PhiSolution> sho;
    std::string shooting_error;
    try {
        sho = merf::shoot(p, shopts);
    } catch (const std::exception& e) {
        shooting_error = e.what();
    }
    if (!pic && !sho) {
        std::cerr << "verify: both solvers failed: " << picard_error << " / " << shooting_error
                  << "\n";
        return kExitFailure;
    }

    bool pass = true;
    nlohmann::json j{{"delta", delta}, {"gamma", gamma}, {"constants", constants}};
    const auto judge = [&](const merf::PhiSolution& sol) {
        const auto rep = merf::check_properties(sol, p, 1e-8);
        pass = pass && rep.bounds_ok && rep.monotone_ok && (!rep.concave_ok || *rep.concave_ok);
        nlohmann::json entry{{"report", rep}, {"summary", merf::solution_summary(sol)}};
        return entry;
    };
    j["picard"] = pic ? judge(*pic) : nlohmann::json(nullptr);
    j["shooting"] = sho ? judge(*sho) : nlohmann::json(nullptr);
    if (!picard_error.empty()) j["picard_error"] = picard_error;
    if (!shooting_error.empty()) j["shooting_error"] = shooting_error;

    if (pic && sho) {
        const double diff = merf::compare_solutions(*pic, *sho);
        j["cross_method_sup_diff"] = diff;
        pass = pass && diff <= std::max(1e-6, 10.0 * flags.tol);
    }
    j["pass"] = pass;
    write_text(output, j.dump(2) + "\n");
    if (!pass) return kExitFailure;
    return constants.in_region ? kExitSuccess : kExitNoGuarantee;
}

int run_stefan(double alpha, double beta, double lambda, double tol,
               const std::string& output) {
    const auto s = merf::solve_phase_parameters(alpha, beta, lambda, tol);
    nlohmann::json j = s;
    write_text(output, j.dump(2) + "\n");
    return kExitSuccess;
}

}  // namespace

namespace {

int cli_main(int argc, char** argv) {
    CLI::App app{
        "modified error function toolkit: solves ((1+dy)y')' + 2x(1+gy)y' = 0 on the half "
        "line with y(0)=0, y(inf)=1, checks the contraction condition M(delta,gamma) < 1, "
        "and solves the phase-change consistency relations"};
    app.require_subcommand(1);

    std::string output;
    std::string format = "csv";
    SolveFlags flags;
    const auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--output", output, "output file (default: stdout)");
        if (with_format)
            cmd->add_option("--format", format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--tol", flags.tol, "solver tolerance");
        cmd->add_option("--grid-points", flags.grid_points, "grid points (odd, >= 201)");
        cmd->add_option("--xmax", flags.x_max, "domain truncation override");
    };

    double delta = 0.0, gamma = 0.0;
    std::string method = "picard";
    auto* phi = app.add_subcommand("phi", "solve for one parameter pair, emit x,phi rows");
    phi->add_option("--delta", delta, "conductivity slope parameter")->required();
    phi->add_option("--gamma", gamma, "capacity slope parameter")->required();
    phi->add_option("--method", method, "picard, shooting, or both")
        ->check(CLI::IsMember({"picard", "shooting", "both"}));
    add_common(phi);

    auto* compare = app.add_subcommand(
        "compare", "solve by both methods, emit x,phi_picard,phi_shooting,diff rows");
    compare->add_option("--delta", delta)->required();
    compare->add_option("--gamma", gamma)->required();
    add_common(compare);

    double delta_min = -0.9, delta_max = 1.0, gamma_min = -0.9, gamma_max = 1.0;
    std::size_t resolution = 200;
    double boundary_tol = 1e-6;
    auto* region = app.add_subcommand("region",
                                      "scan M(delta,gamma) over a rectangle; also writes the "
                                      "region boundary curve delta*(gamma)");
    region->add_option("--delta-min", delta_min);
    region->add_option("--delta-max", delta_max);
    region->add_option("--gamma-min", gamma_min);
    region->add_option("--gamma-max", gamma_max);
    region->add_option("--resolution", resolution, "lattice points per axis");
    region->add_option("--boundary-tol", boundary_tol, "bisection width for delta*(gamma)");
    region->add_option("--output", output, "output CSV path")->required();

    std::string selftest;
    auto* verify = app.add_subcommand("verify",
                                      "run both solvers and report property verdicts as JSON");
    verify->add_option("--delta", delta);
    verify->add_option("--gamma", gamma);
    verify->add_option("--selftest", selftest, "'corrupt' runs the negative self-test")
        ->check(CLI::IsMember({"corrupt"}));
    add_common(verify, false);

    double alpha = 0.0, beta = 0.0, lambda = 1.0;
    double stefan_tol = 1e-9;
    auto* stefan = app.add_subcommand(
        "stefan", "solve gamma*phi(lambda)=alpha, delta*phi(lambda)=beta for (delta,gamma)");
    stefan->add_option("--alpha", alpha, "specific-heat slope")->required();
    stefan->add_option("--beta", beta, "conductivity slope")->required();
    stefan->add_option("--lambda", lambda, "front coefficient (positive)")->required();
    stefan->add_option("--tol", stefan_tol, "residual tolerance");
    stefan->add_option("--output", output, "output JSON path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitFailure;
    }

    try {
        if (phi->parsed()) return run_phi(delta, gamma, method, flags, output, format);
        if (compare->parsed()) return run_phi(delta, gamma, "both", flags, output, format);
        if (region->parsed())
            return run_region(delta_min, delta_max, gamma_min, gamma_max, resolution, output,
                              boundary_tol);
        if (verify->parsed()) return run_verify(delta, gamma, flags, output, selftest);
        if (stefan->parsed()) return run_stefan(alpha, beta, lambda, stefan_tol, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    std::cerr << "error: no subcommand\n";
    return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return cli_main(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (...) {
        std::cerr << "error: unknown failure\n";
        return kExitFailure;
    }
}
