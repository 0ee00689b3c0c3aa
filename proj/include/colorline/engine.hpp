#pragma once

#include <cstdint>
#include <optional>

#include "colorline/model.hpp"
#include "colorline/result.hpp"

namespace colorline {

struct RunOptions {
    // Safety cap on executed events per replication; exceeding it raises
    // DivergenceError (an accidental infinite rework loop, not a crash).
    std::uint64_t event_cap = 10'000'000;
    // Record per-entity station histories into the result (trace tests).
    bool capture_entities = false;
};

// Executes one replication from an empty-and-idle state until the calendar
// is exhausted or the horizon fires. (model, seed, horizon) fully determine
// every field of the result. The model must be valid.
ReplicationResult run_replication(const LineModel& model, std::uint64_t seed,
                                  std::optional<double> horizon = std::nullopt,
                                  const RunOptions& options = {});

} // namespace colorline
