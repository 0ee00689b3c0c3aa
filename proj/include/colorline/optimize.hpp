#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "colorline/model.hpp"
#include "colorline/result.hpp"

namespace colorline {

enum class Objective {
    MaxThroughput,
    MinCostPerUnit,
};

struct OptimizeOptions {
    int replications = 20;
    std::uint64_t seed = 1;
    std::optional<double> horizon;
    // Allocation lattices up to this size are searched exhaustively;
    // larger ones fall back to greedy marginal reallocation.
    std::size_t exhaustive_limit = 10'000;
};

struct AllocationCandidate {
    std::vector<int> allocation;
    double objective_value = 0.0;
};

struct OptimizeResult {
    std::vector<std::string> pool_ids; // operator pools, declaration order
    std::vector<int> best_allocation;  // aligned with pool_ids
    double objective_value = 0.0;
    Objective objective = Objective::MaxThroughput;
    bool exhaustive = true;
    SummaryReport best_report;
    std::vector<AllocationCandidate> trace; // evaluation order
};

// Searches integer operator allocations summing to `total` (every pool at
// least the largest operators_required among its stations). Candidates are
// evaluated with common random numbers; the first strictly best candidate
// wins, so the search is deterministic. Throws InfeasibleTotalError when
// `total` cannot cover the minimums.
OptimizeResult optimize_operators(const LineModel& model, int total, Objective objective,
                                  const OptimizeOptions& options = {});

const char* to_string(Objective objective);
std::optional<Objective> objective_from_string(std::string_view name);

} // namespace colorline
