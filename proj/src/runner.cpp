#include "colorline/runner.hpp"

#include <exception>
#include <stdexcept>

#include "colorline/errors.hpp"
#include "colorline/rng.hpp"

namespace colorline {

std::uint64_t replication_seed(std::uint64_t base_seed, int index) {
    std::uint64_t s = base_seed ^ (0x6C62272E07BB0142ULL * (static_cast<std::uint64_t>(index) + 1));
    return RngStream::splitmix64(s);
}

std::vector<ReplicationResult> run_replications_serial(const LineModel& model, int replications,
                                                       std::uint64_t base_seed,
                                                       std::optional<double> horizon,
                                                       const RunOptions& options) {
    ensure_valid(model);
    std::vector<ReplicationResult> results(static_cast<std::size_t>(replications));
    for (int i = 0; i < replications; ++i) {
        results[static_cast<std::size_t>(i)] =
            run_replication(model, replication_seed(base_seed, i), horizon, options);
    }
    return results;
}

std::vector<ReplicationResult> run_replications(const LineModel& model, int replications,
                                                std::uint64_t base_seed,
                                                std::optional<double> horizon,
                                                const RunOptions& options) {
    ensure_valid(model);
    std::vector<ReplicationResult> results(static_cast<std::size_t>(replications));
    std::exception_ptr error;

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < replications; ++i) {
        try {
            results[static_cast<std::size_t>(i)] =
                run_replication(model, replication_seed(base_seed, i), horizon, options);
        } catch (...) {
#pragma omp critical
            {
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return results;
}

} // namespace colorline
