// ccstack: solve, verify and map stacked polygon-plus-axis central
// configurations from the command line.
//
// Exit codes: 0 success / affirmative, 1 domain-negative outcome
// (infeasible, not a central configuration, singular system, empty band),
// 2 usage or input-format error. stdout carries results, stderr carries
// diagnostics.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ccstack/ccstack.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

int env_thread_cap() {
    const char* raw = std::getenv("CCSTACK_THREADS");
    const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
    if (raw == nullptr || *raw == '\0') {
        return static_cast<int>(cores);
    }
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value <= 0) {
        throw CLI::ValidationError("CCSTACK_THREADS",
                                   "must be a positive integer");
    }
    return static_cast<int>(std::min<long>(value, cores));
}

ccstack::Range parse_range_spec(const std::string& spec, const std::string& name) {
    ccstack::Range range;
    std::istringstream in(spec);
    char sep1 = 0, sep2 = 0;
    if (!(in >> range.lo >> sep1 >> range.hi >> sep2 >> range.step) ||
        sep1 != ':' || sep2 != ':' || !in.eof()) {
        throw CLI::ValidationError(name, "expected lo:hi:step, got \"" + spec + "\"");
    }
    return range;
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

void print_solve_json(const ccstack::CoefficientSystem& cs,
                      const ccstack::MassSolution& sol,
                      const std::optional<double>& residual,
                      const std::optional<std::string>& reason) {
    using ccstack::serialize_double;
    std::ostringstream out;
    out << "{\"lambda_star\":" << serialize_double(cs.lambda_star)
        << ",\"a11\":" << serialize_double(cs.a11)
        << ",\"a12\":" << serialize_double(cs.a12)
        << ",\"a21\":" << serialize_double(cs.a21)
        << ",\"a22\":" << serialize_double(cs.a22)
        << ",\"b1\":" << serialize_double(cs.b1)
        << ",\"b2\":" << serialize_double(cs.b2)
        << ",\"M1\":" << serialize_double(sol.m1)
        << ",\"M2\":" << serialize_double(sol.m2)
        << ",\"lambda\":" << serialize_double(sol.lambda)
        << ",\"feasible\":" << json_bool(sol.feasible) << ",\"residual\":"
        << (residual ? serialize_double(*residual) : std::string("null"));
    if (reason) {
        out << ",\"reason\":\"" << *reason << "\"";
    }
    out << "}";
    std::cout << out.str() << "\n";
}

int cmd_solve(int n, double r1, double r2, bool json_flag, bool verify_flag) {
    using ccstack::display_double;
    ccstack::CoefficientSystem cs;
    try {
        cs = ccstack::coefficients(n, r1, r2);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    ccstack::MassSolution sol;
    try {
        sol = ccstack::solve_masses(cs);
    } catch (const ccstack::SingularSystemError& e) {
        if (json_flag) {
            std::cout << "{\"reason\":\"singular-system\",\"determinant\":"
                      << ccstack::serialize_double(e.determinant()) << "}\n";
        } else {
            std::cout << "reason: singular-system\n"
                      << "det: " << display_double(e.determinant()) << "\n";
        }
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    }

    std::optional<double> residual;
    if (verify_flag && sol.feasible) {
        const ccstack::Configuration config =
            ccstack::build_stacked({n, r1, r2, sol.m1, sol.m2});
        residual = ccstack::verify(config).report.relative_max;
    }
    const bool verified_ok =
        !verify_flag || (residual && *residual <= ccstack::kDefaultVerifyTolerance);
    const bool ok = sol.feasible && verified_ok;

    if (json_flag) {
        std::optional<std::string> reason;
        if (!sol.feasible) {
            reason = "infeasible";
        } else if (!verified_ok) {
            reason = "verification-failed";
        }
        print_solve_json(cs, sol, residual, reason);
    } else {
        std::cout << "lambda_star: " << display_double(cs.lambda_star) << "\n"
                  << "a11: " << display_double(cs.a11) << "\n"
                  << "a12: " << display_double(cs.a12) << "\n"
                  << "a21: " << display_double(cs.a21) << "\n"
                  << "a22: " << display_double(cs.a22) << "\n"
                  << "b1: " << display_double(cs.b1) << "\n"
                  << "b2: " << display_double(cs.b2) << "\n"
                  << "M1: " << display_double(sol.m1) << "\n"
                  << "M2: " << display_double(sol.m2) << "\n"
                  << "lambda: " << display_double(sol.lambda) << "\n"
                  << "feasible: " << (sol.feasible ? "true" : "false") << "\n";
        if (residual) {
            std::cout << "residual: " << display_double(*residual) << "\n";
        }
        if (!sol.feasible) {
            std::cout << "reason: infeasible\n";
        } else if (!verified_ok) {
            std::cout << "reason: verification-failed\n";
        }
    }
    return ok ? kExitSuccess : kExitNegative;
}

int cmd_verify(const std::string& config_path, double tol, bool json_flag) {
    using ccstack::display_double;
    ccstack::VerifyOutcome outcome;
    try {
        const ccstack::Configuration config = ccstack::load_configuration(config_path);
        outcome = ccstack::verify(config, tol);
    } catch (const ccstack::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (json_flag) {
        std::cout << ccstack::report_to_json(outcome.report) << "\n";
    } else {
        std::cout << "lambda: " << display_double(outcome.lambda) << "\n"
                  << "max_norm: " << display_double(outcome.report.max_norm) << "\n"
                  << "relative_max: " << display_double(outcome.report.relative_max)
                  << "\n";
        for (std::size_t k = 0; k < outcome.report.per_body.size(); ++k) {
            std::cout << "body[" << k
                      << "]: " << display_double(outcome.report.per_body[k].norm())
                      << "\n";
        }
        std::cout << "is_cc: " << (outcome.is_cc ? "true" : "false") << "\n";
    }
    return outcome.is_cc ? kExitSuccess : kExitNegative;
}

int cmd_scan(int n, const std::string& r1_spec, const std::string& gap_spec,
             const std::string& out_path, bool verify_flag) {
    const ccstack::Range r1_range = parse_range_spec(r1_spec, "--r1");
    const ccstack::Range gap_range = parse_range_spec(gap_spec, "--gap");
    ccstack::ScanOptions options;
    options.verify = verify_flag;
    options.threads = env_thread_cap();

    const ccstack::ScanGrid grid = ccstack::scan(n, r1_range, gap_range, options);
    try {
        ccstack::export_csv(grid, out_path);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const ccstack::BandEstimate band = ccstack::band_summary(grid);
    std::size_t feasible_count = 0;
    for (const auto& cell : grid.cells) feasible_count += cell.feasible;

    std::cout << "cells: " << grid.cells.size() << "\n"
              << "feasible_cells: " << feasible_count << "\n";
    if (band.empty) {
        std::cout << "delta_hat: none\n";
    } else {
        std::cout << "delta_hat: " << ccstack::display_double(band.delta_hat) << "\n";
    }
    return band.empty ? kExitNegative : kExitSuccess;
}

int cmd_lambda_star(int n) {
    std::cout << ccstack::display_double(ccstack::lambda_star(n)) << "\n";
    return kExitSuccess;
}

int run(int argc, char** argv) {
    CLI::App app{"stacked polygon-plus-axis central configurations"};
    app.require_subcommand(1);

    int n = 0;
    double r1 = 0.0, r2 = 0.0, tol = ccstack::kDefaultVerifyTolerance;
    bool json_flag = false, verify_flag = false;
    std::string config_path, r1_spec, gap_spec, out_path;

    CLI::App* solve = app.add_subcommand(
        "solve", "solve the axis-pair masses for (n, r1, r2)");
    solve->add_option("--n", n, "polygon body count (>= 2)")->required();
    solve->add_option("--r1", r1, "inner axis offset")->required();
    solve->add_option("--r2", r2, "outer axis offset (> r1)")->required();
    solve->add_flag("--json", json_flag, "emit a single JSON object");
    solve->add_flag("--verify", verify_flag,
                    "assemble the n+4 configuration and report its relative residual");

    CLI::App* verify = app.add_subcommand(
        "verify", "check a JSON configuration file for central-configuration status");
    verify->add_option("--config", config_path, "configuration JSON path")->required();
    verify->add_option("--tol", tol, "relative residual tolerance");
    verify->add_flag("--json", json_flag, "emit the residual report as JSON");

    CLI::App* scan = app.add_subcommand(
        "scan", "sweep the (r1, gap) plane and export a feasibility CSV");
    scan->add_option("--n", n, "polygon body count (>= 2)")->required();
    scan->add_option("--r1", r1_spec, "r1 range as lo:hi:step")->required();
    scan->add_option("--gap", gap_spec, "gap = r2 - r1 range as lo:hi:step")->required();
    scan->add_option("--out", out_path, "output CSV path")->required();
    scan->add_flag("--verify", verify_flag, "verify every feasible cell end-to-end");

    CLI::App* lstar = app.add_subcommand(
        "lambda-star", "print the regular-polygon multiplier");
    lstar->add_option("--n", n, "polygon body count (>= 2)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(n, r1, r2, json_flag, verify_flag);
        }
        if (verify->parsed()) {
            if (!(tol > 0.0)) {
                std::cerr << "error: --tol must be positive\n";
                return kExitUsage;
            }
            return cmd_verify(config_path, tol, json_flag);
        }
        if (scan->parsed()) {
            return cmd_scan(n, r1_spec, gap_spec, out_path, verify_flag);
        }
        if (lstar->parsed()) {
            return cmd_lambda_star(n);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (...) {
        std::cerr << "error: unexpected failure\n";
        return kExitUsage;
    }
}
