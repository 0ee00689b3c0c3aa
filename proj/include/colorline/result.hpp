#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "colorline/entity.hpp"
#include "colorline/model.hpp"
#include "colorline/stats.hpp"

namespace colorline {

// Per-station queue statistics of one replication.
struct QueueStats {
    std::string station;
    double time_weighted_length = 0.0; // time-averaged number waiting
    double mean_wait = 0.0;            // tally mean over completed waits
    double max_wait = 0.0;
    std::uint64_t wait_count = 0;
};

struct PoolUsage {
    std::string pool;
    PoolKind kind = PoolKind::Machine;
    int capacity = 0;
    double busy_hours = 0.0;
    double idle_hours = 0.0;
    double utilization = 0.0;
    double va_busy_hours = 0.0;
    double nva_busy_hours = 0.0;
    double busy_rate = 0.0;
    double idle_rate = 0.0;
};

struct CostBreakdown {
    double value_added = 0.0;
    double non_value_added = 0.0;
    double busy = 0.0; // = value_added + non_value_added, exactly
    double idle = 0.0;
    double total = 0.0; // = busy + idle, exactly
};

// Full metric bundle of one replication.
struct ReplicationResult {
    std::uint64_t seed = 0;
    double horizon = 0.0;
    std::uint64_t model_fp = 0;

    std::uint64_t outputs = 0;
    std::uint64_t created = 0;
    std::uint64_t wip_at_horizon = 0;
    std::uint64_t events_executed = 0;

    std::vector<QueueStats> per_queue; // station declaration order
    std::vector<PoolUsage> per_pool;   // pool declaration order
    CostBreakdown cost;

    std::vector<EntityRecord> entities; // only when captured

    // Sum of time-weighted queue lengths: the line-wide "number in queue".
    double queue_total_time_weighted() const;
    // Queue entity-hours per created entity (= queue total x horizon /
    // created); the Little's-law companion of the row above.
    double wait_hours_per_entity() const;
    // Capacity-weighted mean utilization over every pool.
    double mean_utilization() const;

    bool operator==(const ReplicationResult&) const;
};

// Cost model input: one pool's busy hours partitioned by value class, its
// idle hours, and its rates.
struct PoolCostInput {
    double va_busy_hours = 0.0;
    double nva_busy_hours = 0.0;
    double idle_hours = 0.0;
    double busy_rate = 0.0;
    double idle_rate = 0.0;
};

// busy := value_added + non_value_added and total := busy + idle are exact
// identities by construction. Throws NegativeTimeError on negative hours.
CostBreakdown compute_costs(std::span<const PoolCostInput> usage);

// total_cost / outputs; throws ZeroOutputError when outputs == 0.
double cost_per_unit(double total_cost, std::uint64_t outputs);

// --- cross-replication summary -------------------------------------------

struct MetricSummary {
    std::string name;
    std::string unit;
    Summary stats;
};

struct QueueSummary {
    std::string station;
    Summary length;
    Summary wait;
    Summary max_wait;
};

struct PoolSummary {
    std::string pool;
    PoolKind kind = PoolKind::Machine;
    int capacity = 0;
    Summary busy_hours;
    Summary idle_hours;
    Summary utilization;
};

// Canonical line-level metric names, in report row order.
std::span<const std::string_view> canonical_metric_names();

struct SummaryReport {
    int replications = 0;
    std::uint64_t model_fp = 0;
    double horizon = 0.0;

    std::vector<MetricSummary> line; // canonical rows, fixed order
    std::vector<QueueSummary> queues;
    std::vector<PoolSummary> pools;

    const MetricSummary* find(std::string_view name) const;
    // Mean of a canonical metric; throws SchemaMismatchError when absent.
    double mean_of(std::string_view name) const;
};

// Mean / sample std dev / 95% half-width per metric across replications.
// Throws EmptyListError on an empty list and MixedModelError when results
// come from different models or horizons.
SummaryReport aggregate_replications(std::span<const ReplicationResult> results);

} // namespace colorline
