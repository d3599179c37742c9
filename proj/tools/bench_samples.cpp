// Compares the per-sample kernels at one thread against the full OpenMP
// thread pool on identical configurations and checks that the report
// payloads stay bitwise identical.
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "acsgeo/report.hpp"
#include "acsgeo/scan.hpp"

using namespace acsgeo;

namespace {

double time_suite(const ScanConfig& c, std::string& payload) {
    const auto t0 = std::chrono::steady_clock::now();
    const ScanReport r = run_suite(c);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    payload = report_payload_json(r);
    return dt;
}

}  // namespace

int main(int argc, char** argv) {
    const int samples = argc > 1 ? std::atoi(argv[1]) : 400;
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif

    const std::vector<std::string> suites{"tensor-identities", "thm44", "prop56", "jrm"};
    std::cout << "samples per suite: " << samples << ", threads: 1 vs " << max_threads
              << "\n";
    std::cout << std::left << std::setw(20) << "suite" << std::right << std::setw(12)
              << "serial [s]" << std::setw(14) << "parallel [s]" << std::setw(10)
              << "speedup" << std::setw(12) << "payload" << "\n";

    bool all_match = true;
    for (const auto& suite : suites) {
        ScanConfig cfg;
        cfg.field = "octonionic-s6";
        cfg.suite = suite;
        cfg.samples = samples;
        cfg.seed = 42;

        std::string serial_payload, parallel_payload;
#ifdef _OPENMP
        omp_set_num_threads(1);
#endif
        const double t_serial = time_suite(cfg, serial_payload);
#ifdef _OPENMP
        omp_set_num_threads(max_threads);
#endif
        const double t_parallel = time_suite(cfg, parallel_payload);

        const bool match = serial_payload == parallel_payload;
        all_match = all_match && match;
        std::cout << std::left << std::setw(20) << suite << std::right << std::fixed
                  << std::setprecision(3) << std::setw(12) << t_serial << std::setw(14)
                  << t_parallel << std::setprecision(2) << std::setw(10)
                  << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << std::setw(12)
                  << (match ? "identical" : "DIFFERS") << "\n";
    }
    if (!all_match) {
        std::cerr << "payload mismatch between thread counts\n";
        return 1;
    }
    return 0;
}
