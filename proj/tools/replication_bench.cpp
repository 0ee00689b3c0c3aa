// Benchmark: serial reference runner vs the OpenMP runner on the built-in
// line, verifying both produce identical results.
//
//   replication_bench [replications] [seed]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "colorline/fixture.hpp"
#include "colorline/runner.hpp"

using namespace colorline;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 2000;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

    const LineModel model = build_paper_line();

    // Warm-up pass so first-touch costs don't skew either side.
    (void)run_replications_serial(model, 10, seed);

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = run_replications_serial(model, reps, seed);
    const double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_replications(model, reps, seed);
    const double parallel_s = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i) {
        identical = serial[i] == parallel[i];
    }

    std::uint64_t events = 0;
    for (const auto& r : serial) events += r.events_executed;

    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
#pragma omp single
    threads = omp_get_num_threads();
#endif

    std::printf("replications          %d\n", reps);
    std::printf("events per run        %.0f\n", static_cast<double>(events) / reps);
    std::printf("serial                %.3f s  (%.0f reps/s)\n", serial_s, reps / serial_s);
    std::printf("parallel (%2d threads) %.3f s  (%.0f reps/s)\n", threads, parallel_s,
                reps / parallel_s);
    std::printf("speedup               %.2fx\n", serial_s / parallel_s);
    std::printf("results identical     %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
