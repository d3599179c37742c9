#pragma once

#include <string>
#include <vector>

#include "acsgeo/linalg.hpp"

namespace acsgeo {

struct CheckRecord {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct ExtremumRecord {
    std::string quantity;
    double max = 0.0;
    double min = 0.0;
    RVector argmax_point, argmax_direction;
    RVector argmin_point, argmin_direction;
};

struct EnvironmentRecord {
    uint64_t seed = 0;
    double step = 0.0;
    int samples = 0;
    double wall_time_s = 0.0;
};

struct ScanReport {
    std::string suite;  // suite name (verify) or quantity name (scan)
    std::string field;
    EnvironmentRecord environment;
    std::vector<CheckRecord> checks;
    std::vector<ExtremumRecord> extrema;

    bool pass() const;
};

// Full report as JSON (doubles serialized shortest-round-trip, so every
// numeric field reparses to the identical bit pattern).
std::string report_to_json(const ScanReport& r);
// The same document minus wall time, used for determinism comparisons.
std::string report_payload_json(const ScanReport& r);
ScanReport report_from_json(const std::string& text);
void emit_report(const ScanReport& r, const std::string& path);

}  // namespace acsgeo
