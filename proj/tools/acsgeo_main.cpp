#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "acsgeo/report.hpp"
#include "acsgeo/scan.hpp"

using namespace acsgeo;

namespace {

struct Args {
    ScanConfig cfg;
    std::string report_path;
    std::string fg_path;
    std::vector<std::string> tols;
};

void add_common(CLI::App* sub, Args& a, bool is_scan) {
    sub->add_option("--field", a.cfg.field, "field registry name")->capture_default_str();
    if (is_scan)
        sub->add_option("--quantity", a.cfg.quantity, "scanned quantity")->required();
    else
        sub->add_option("--suite", a.cfg.suite, "check suite")->required();
    sub->add_option("--samples", a.cfg.samples, "sample count")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", a.cfg.seed, "rng seed")->capture_default_str();
    sub->add_option("--step", a.cfg.step, "finite-difference step (default per backend)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", a.tols, "tolerance override, KEY=VALUE (repeatable)")
        ->take_all();
    sub->add_flag("--optimize", a.cfg.optimize, "refine extrema by local search");
    sub->add_option("--report", a.report_path, "write the JSON report to this path");
    sub->add_option("--fg-coeffs", a.fg_path, "coefficient file for the stereo-fg field");
}

bool apply_tols(Args& a, std::string& err) {
    for (const auto& kv : a.tols) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size()) {
            err = "expected KEY=VALUE in --tol, got '" + kv + "'";
            return false;
        }
        try {
            size_t used = 0;
            const double v = std::stod(kv.substr(eq + 1), &used);
            if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
            a.cfg.tolerances[kv.substr(0, eq)] = v;
        } catch (const std::exception&) {
            err = "bad tolerance value in --tol '" + kv + "'";
            return false;
        }
    }
    return true;
}

void print_report(const ScanReport& rep) {
    for (const auto& ch : rep.checks)
        std::cout << (ch.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(32)
                  << ch.name << std::right << "  max_residual "
                  << std::setprecision(6) << std::scientific << ch.max_residual
                  << "  tolerance " << ch.tolerance << std::defaultfloat << "\n";
    for (const auto& ex : rep.extrema)
        std::cout << "extremum " << ex.quantity << ": max "
                  << std::setprecision(17) << ex.max << ", min " << ex.min << "\n";
    std::cout << rep.suite << " on " << rep.field << ": "
              << (rep.pass() ? "PASS" : "FAIL") << " (" << rep.checks.size()
              << " checks, " << std::setprecision(3) << rep.environment.wall_time_s
              << " s)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks and scans for almost complex structure fields"};
    app.require_subcommand(1);

    Args vargs, sargs;
    CLI::App* verify = app.add_subcommand("verify", "run a named check suite");
    CLI::App* scan = app.add_subcommand("scan", "scan a quantity over random samples");
    add_common(verify, vargs, false);
    add_common(scan, sargs, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const bool is_scan = scan->parsed();
    Args& a = is_scan ? sargs : vargs;

    std::string err;
    if (!apply_tols(a, err)) {
        std::cerr << "config error: " << err << "\n";
        return 2;
    }
    if (!a.fg_path.empty()) {
        try {
            a.cfg.field_options.fg = parse_fg_coeffs(a.fg_path);
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
    }

    ScanReport rep;
    try {
        rep = is_scan ? run_scan(a.cfg) : run_suite(a.cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    print_report(rep);
    if (!a.report_path.empty()) {
        try {
            emit_report(rep, a.report_path);
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
    }
    return rep.pass() ? 0 : 1;
}
