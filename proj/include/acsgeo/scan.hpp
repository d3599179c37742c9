#pragma once

#include <map>
#include <optional>

#include "acsgeo/grassmann.hpp"
#include "acsgeo/report.hpp"

namespace acsgeo {

// Everything a suite or scan run needs; built by the CLI or by tests.
struct ScanConfig {
    std::string field = "octonionic-s6";
    std::string suite;     // one of suite_names(), for run_suite
    std::string quantity;  // one of quantity_names(), for run_scan
    int samples = 100;
    uint64_t seed = 42;
    double step = 0.0;  // 0 -> backend default (1e-3 sphere, 1e-4 chart)
    std::map<std::string, double> tolerances;  // per-check overrides
    bool optimize = false;
    FieldOptions field_options;
};

const std::vector<std::string>& suite_names();
const std::vector<std::string>& quantity_names();

// Throws std::invalid_argument on malformed configs (unknown names,
// samples < 1, step < 0, non-positive tolerance, field/suite mismatch).
// The CLI maps this to exit code 2.
void validate_config(const ScanConfig& c, bool is_scan);

// Runs the named identity suite over seeded samples. Deterministic for a
// fixed (seed, samples, step) regardless of the number of OpenMP threads:
// all random draws happen before the parallel loop and results are
// aggregated in sample order.
ScanReport run_suite(const ScanConfig& c);

// Evaluates the named obstruction functional over seeded samples, reporting
// extrema with witnesses; with optimize set, the best sample is refined by
// derivative-free projected coordinate ascent (200 iterations, step halving).
ScanReport run_scan(const ScanConfig& c);

}  // namespace acsgeo
