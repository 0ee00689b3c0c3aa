#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "colorline/engine.hpp"
#include "colorline/model.hpp"
#include "colorline/result.hpp"

namespace colorline {

// Seed of replication `index` under a base seed. Replications own disjoint
// stream families, so they are independent and order-free.
std::uint64_t replication_seed(std::uint64_t base_seed, int index);

// Serial reference runner: replication 0..n-1 in order, one thread.
std::vector<ReplicationResult> run_replications_serial(
    const LineModel& model, int replications, std::uint64_t base_seed,
    std::optional<double> horizon = std::nullopt, const RunOptions& options = {});

// OpenMP runner. Results are stored by replication index, so the output is
// bit-identical to the serial reference for any thread count.
std::vector<ReplicationResult> run_replications(
    const LineModel& model, int replications, std::uint64_t base_seed,
    std::optional<double> horizon = std::nullopt, const RunOptions& options = {});

} // namespace colorline
