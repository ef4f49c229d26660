// Compares the serial reference sweep against the OpenMP sweep on the
// corpus and reports timings; exits nonzero if they ever disagree.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "rigidconv/probes.hpp"
#include "rigidconv/systemio.hpp"

using namespace rigidconv;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::duration<double>>(b - a).count();
}

bool equal_reports(const std::vector<PCurvatureReport>& a, const std::vector<PCurvatureReport>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); i++)
        if (a[i].p != b[i].p || a[i].status != b[i].status ||
            a[i].witness_degree != b[i].witness_degree || a[i].witness_poly != b[i].witness_poly)
            return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    long hi = argc > 1 ? std::stol(argv[1]) : 120;
    int threads = argc > 2 ? std::stoi(argv[2]) : omp_get_max_threads();

    std::printf("nilpotency sweep over primes <= %ld, %d OpenMP threads\n\n", hi, threads);
    std::printf("%-16s %10s %10s %8s\n", "system", "serial[s]", "openmp[s]", "speedup");

    bool ok = true;
    for (const auto& doc : corpus()) {
        auto t0 = std::chrono::steady_clock::now();
        auto serial = nilpotency_sweep_serial(doc.system, 2, hi);
        auto t1 = std::chrono::steady_clock::now();
        auto parallel = nilpotency_sweep(doc.system, 2, hi, threads);
        auto t2 = std::chrono::steady_clock::now();

        if (!equal_reports(serial, parallel)) {
            std::printf("%-16s MISMATCH between serial and parallel results\n", doc.name.c_str());
            ok = false;
            continue;
        }
        double ts = seconds(t0, t1), tp = seconds(t1, t2);
        std::printf("%-16s %10.3f %10.3f %7.2fx\n", doc.name.c_str(), ts, tp,
                    tp > 0 ? ts / tp : 0.0);
    }
    return ok ? 0 : 1;
}
