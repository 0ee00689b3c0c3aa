#include "colorline/optimize.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "colorline/errors.hpp"
#include "colorline/runner.hpp"

namespace colorline {

namespace {

struct Search {
    const LineModel& base;
    Objective objective;
    const OptimizeOptions& options;
    std::vector<int> pool_indices; // operator pool index in base.pools
    std::vector<int> minimums;

    std::map<std::vector<int>, double> cache;
    std::vector<AllocationCandidate> trace;

    LineModel with_allocation(const std::vector<int>& alloc) const {
        LineModel m = base;
        for (std::size_t i = 0; i < pool_indices.size(); ++i) {
            m.pools[static_cast<std::size_t>(pool_indices[i])].capacity = alloc[i];
        }
        return m;
    }

    // Lower is better internally; MaxThroughput negates outputs.
    double evaluate(const std::vector<int>& alloc) {
        auto it = cache.find(alloc);
        if (it != cache.end()) return it->second;
        const LineModel m = with_allocation(alloc);
        const auto results =
            run_replications(m, options.replications, options.seed, options.horizon);
        const auto report = aggregate_replications(results);
        double value;
        if (objective == Objective::MaxThroughput) {
            value = -report.mean_of("average_outputs");
        } else {
            const double outputs = report.mean_of("average_outputs");
            value = outputs > 0.0 ? report.mean_of("total_cost") / outputs
                                  : std::numeric_limits<double>::infinity();
        }
        cache.emplace(alloc, value);
        trace.push_back({alloc, objective == Objective::MaxThroughput ? -value : value});
        return value;
    }
};

std::size_t lattice_size(int spare, std::size_t pools, std::size_t limit) {
    // Number of ways to distribute `spare` over `pools` bins, capped.
    std::vector<std::size_t> row(static_cast<std::size_t>(spare) + 1, 0);
    row[0] = 1;
    for (std::size_t p = 1; p < pools; ++p) {
        std::size_t acc = 0;
        for (std::size_t s = 0; s <= static_cast<std::size_t>(spare); ++s) {
            acc += row[s];
            if (acc > limit) acc = limit + 1;
            row[s] = acc;
        }
    }
    std::size_t total = 0;
    for (std::size_t s = 0; s <= static_cast<std::size_t>(spare); ++s) {
        total += row[s];
        if (total > limit) return limit + 1;
    }
    return total;
}

void enumerate(std::vector<int>& alloc, std::size_t index, int remaining, Search& search,
               std::vector<int>& best, double& best_value) {
    if (index + 1 == alloc.size()) {
        alloc[index] = search.minimums[index] + remaining;
        const double v = search.evaluate(alloc);
        // Strict improvement: the first candidate of a tie wins.
        if (v < best_value - 1e-12) {
            best_value = v;
            best = alloc;
        }
        return;
    }
    for (int take = 0; take <= remaining; ++take) {
        alloc[index] = search.minimums[index] + take;
        enumerate(alloc, index + 1, remaining - take, search, best, best_value);
    }
}

} // namespace

OptimizeResult optimize_operators(const LineModel& model, int total, Objective objective,
                                  const OptimizeOptions& options) {
    ensure_valid(model);

    Search search{model, objective, options, {}, {}, {}, {}};
    OptimizeResult out;
    out.objective = objective;

    for (std::size_t i = 0; i < model.pools.size(); ++i) {
        const auto& p = model.pools[i];
        if (p.kind != PoolKind::Operator) continue;
        search.pool_indices.push_back(static_cast<int>(i));
        int minimum = 0;
        for (const auto& st : model.stations) {
            if (st.operator_pool == p.id) minimum = std::max(minimum, st.operators_required);
        }
        search.minimums.push_back(minimum);
        out.pool_ids.push_back(p.id);
    }
    if (search.pool_indices.empty()) {
        throw InfeasibleTotalError("model has no operator pools to allocate");
    }

    int min_total = 0;
    for (int m : search.minimums) min_total += m;
    if (total < min_total) {
        throw InfeasibleTotalError("total " + std::to_string(total) +
                                   " is below the feasible minimum " + std::to_string(min_total));
    }

    const int spare = total - min_total;
    const std::size_t size =
        lattice_size(spare, search.pool_indices.size(), options.exhaustive_limit);
    out.exhaustive = size <= options.exhaustive_limit;

    std::vector<int> best;
    double best_value = std::numeric_limits<double>::infinity();

    if (out.exhaustive) {
        std::vector<int> alloc(search.pool_indices.size(), 0);
        enumerate(alloc, 0, spare, search, best, best_value);
    } else {
        // Greedy marginal reallocation: per-pool minimums plus the spare
        // spread round-robin, then keep applying the best strictly
        // improving single-operator move.
        std::vector<int> alloc = search.minimums;
        for (int s = 0; s < spare; ++s) {
            alloc[static_cast<std::size_t>(s) % alloc.size()] += 1;
        }
        best = alloc;
        best_value = search.evaluate(alloc);
        bool improved = true;
        while (improved) {
            improved = false;
            std::vector<int> best_move;
            double best_move_value = best_value;
            for (std::size_t i = 0; i < alloc.size(); ++i) {
                if (alloc[i] <= search.minimums[i]) continue;
                for (std::size_t j = 0; j < alloc.size(); ++j) {
                    if (i == j) continue;
                    std::vector<int> next = alloc;
                    next[i] -= 1;
                    next[j] += 1;
                    const double v = search.evaluate(next);
                    if (v < best_move_value - 1e-12) {
                        best_move_value = v;
                        best_move = next;
                    }
                }
            }
            if (!best_move.empty()) {
                alloc = best_move;
                best = alloc;
                best_value = best_move_value;
                improved = true;
            }
        }
    }

    out.best_allocation = best;
    out.objective_value = objective == Objective::MaxThroughput ? -best_value : best_value;
    out.trace = std::move(search.trace);

    const LineModel best_model = search.with_allocation(best);
    const auto results =
        run_replications(best_model, options.replications, options.seed, options.horizon);
    out.best_report = aggregate_replications(results);
    return out;
}

const char* to_string(Objective objective) {
    return objective == Objective::MaxThroughput ? "max_throughput" : "min_cost_per_unit";
}

std::optional<Objective> objective_from_string(std::string_view name) {
    if (name == "max_throughput") return Objective::MaxThroughput;
    if (name == "min_cost_per_unit") return Objective::MinCostPerUnit;
    return std::nullopt;
}

} // namespace colorline
