#include "colorline/result.hpp"

#include <array>
#include <cmath>

#include "colorline/errors.hpp"

namespace colorline {

double ReplicationResult::queue_total_time_weighted() const {
    double total = 0.0;
    for (const auto& q : per_queue) total += q.time_weighted_length;
    return total;
}

double ReplicationResult::wait_hours_per_entity() const {
    if (created == 0) return 0.0;
    return queue_total_time_weighted() * horizon / static_cast<double>(created);
}

double ReplicationResult::mean_utilization() const {
    double busy = 0.0;
    double capacity_hours = 0.0;
    for (const auto& p : per_pool) {
        busy += p.busy_hours;
        capacity_hours += static_cast<double>(p.capacity) * horizon;
    }
    return capacity_hours > 0.0 ? busy / capacity_hours : 0.0;
}

bool ReplicationResult::operator==(const ReplicationResult& o) const {
    auto qeq = [](const QueueStats& a, const QueueStats& b) {
        return a.station == b.station && a.time_weighted_length == b.time_weighted_length &&
               a.mean_wait == b.mean_wait && a.max_wait == b.max_wait &&
               a.wait_count == b.wait_count;
    };
    auto peq = [](const PoolUsage& a, const PoolUsage& b) {
        return a.pool == b.pool && a.capacity == b.capacity && a.busy_hours == b.busy_hours &&
               a.idle_hours == b.idle_hours && a.utilization == b.utilization &&
               a.va_busy_hours == b.va_busy_hours && a.nva_busy_hours == b.nva_busy_hours;
    };
    if (seed != o.seed || horizon != o.horizon || model_fp != o.model_fp ||
        outputs != o.outputs || created != o.created || wip_at_horizon != o.wip_at_horizon ||
        events_executed != o.events_executed) {
        return false;
    }
    if (per_queue.size() != o.per_queue.size() || per_pool.size() != o.per_pool.size()) {
        return false;
    }
    for (std::size_t i = 0; i < per_queue.size(); ++i) {
        if (!qeq(per_queue[i], o.per_queue[i])) return false;
    }
    for (std::size_t i = 0; i < per_pool.size(); ++i) {
        if (!peq(per_pool[i], o.per_pool[i])) return false;
    }
    return cost.value_added == o.cost.value_added &&
           cost.non_value_added == o.cost.non_value_added && cost.busy == o.cost.busy &&
           cost.idle == o.cost.idle && cost.total == o.cost.total;
}

CostBreakdown compute_costs(std::span<const PoolCostInput> usage) {
    CostBreakdown out;
    for (const auto& u : usage) {
        if (u.va_busy_hours < 0.0 || u.nva_busy_hours < 0.0 || u.idle_hours < 0.0) {
            throw NegativeTimeError("compute_costs: negative hours");
        }
        out.value_added += u.va_busy_hours * u.busy_rate;
        out.non_value_added += u.nva_busy_hours * u.busy_rate;
        out.idle += u.idle_hours * u.idle_rate;
    }
    out.busy = out.value_added + out.non_value_added;
    out.total = out.busy + out.idle;
    return out;
}

double cost_per_unit(double total_cost, std::uint64_t outputs) {
    if (outputs == 0) throw ZeroOutputError("cost_per_unit: zero outputs");
    return total_cost / static_cast<double>(outputs);
}

namespace {

constexpr std::array<std::string_view, 10> kMetricNames = {
    "average_outputs",
    "average_number_in_queue",
    "average_waiting_time_in_queue",
    "average_resource_utilization",
    "value_added_cost",
    "non_value_added_cost",
    "busy_cost",
    "idle_cost",
    "total_cost",
    "cost_per_unit",
};

constexpr std::array<std::string_view, 10> kMetricUnits = {
    "number", "number", "hour", "-", "dollar", "dollar", "dollar", "dollar", "dollar", "dollar",
};

} // namespace

std::span<const std::string_view> canonical_metric_names() { return kMetricNames; }

const MetricSummary* SummaryReport::find(std::string_view name) const {
    for (const auto& m : line) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

double SummaryReport::mean_of(std::string_view name) const {
    const MetricSummary* m = find(name);
    if (m == nullptr) {
        throw SchemaMismatchError("metric '" + std::string(name) + "' missing from report");
    }
    return m->stats.mean;
}

SummaryReport aggregate_replications(std::span<const ReplicationResult> results) {
    if (results.empty()) throw EmptyListError("aggregate_replications: no results");
    const auto& first = results.front();
    for (const auto& r : results) {
        if (r.model_fp != first.model_fp || r.horizon != first.horizon ||
            r.per_queue.size() != first.per_queue.size() ||
            r.per_pool.size() != first.per_pool.size()) {
            throw MixedModelError("aggregate_replications: results from different models");
        }
    }

    SummaryReport report;
    report.replications = static_cast<int>(results.size());
    report.model_fp = first.model_fp;
    report.horizon = first.horizon;

    const std::size_t n = results.size();
    std::vector<double> buf(n);
    auto collect = [&](auto&& f) -> Summary {
        for (std::size_t i = 0; i < n; ++i) buf[i] = f(results[i]);
        return summarize(buf);
    };

    auto push = [&](std::string_view name, std::string_view unit, const Summary& s) {
        report.line.push_back({std::string(name), std::string(unit), s});
    };

    push(kMetricNames[0], kMetricUnits[0],
         collect([](const ReplicationResult& r) { return static_cast<double>(r.outputs); }));
    push(kMetricNames[1], kMetricUnits[1],
         collect([](const ReplicationResult& r) { return r.queue_total_time_weighted(); }));
    push(kMetricNames[2], kMetricUnits[2],
         collect([](const ReplicationResult& r) { return r.wait_hours_per_entity(); }));
    push(kMetricNames[3], kMetricUnits[3],
         collect([](const ReplicationResult& r) { return r.mean_utilization(); }));
    push(kMetricNames[4], kMetricUnits[4],
         collect([](const ReplicationResult& r) { return r.cost.value_added; }));
    push(kMetricNames[5], kMetricUnits[5],
         collect([](const ReplicationResult& r) { return r.cost.non_value_added; }));
    push(kMetricNames[6], kMetricUnits[6],
         collect([](const ReplicationResult& r) { return r.cost.busy; }));
    push(kMetricNames[7], kMetricUnits[7],
         collect([](const ReplicationResult& r) { return r.cost.idle; }));
    push(kMetricNames[8], kMetricUnits[8],
         collect([](const ReplicationResult& r) { return r.cost.total; }));

    // Derived metric: mean is mean(total) / mean(outputs); the spread
    // columns come from per-replication ratios (zero-output replications
    // carry no ratio).
    {
        const double mean_total = report.line[8].stats.mean;
        const double mean_outputs = report.line[0].stats.mean;
        std::vector<double> ratios;
        ratios.reserve(n);
        for (const auto& r : results) {
            if (r.outputs > 0) ratios.push_back(cost_per_unit(r.cost.total, r.outputs));
        }
        Summary s;
        if (!ratios.empty()) s = summarize(ratios);
        s.mean = mean_outputs > 0.0 ? mean_total / mean_outputs : 0.0;
        s.count = n;
        push(kMetricNames[9], kMetricUnits[9], s);
    }

    for (std::size_t qi = 0; qi < first.per_queue.size(); ++qi) {
        QueueSummary qs;
        qs.station = first.per_queue[qi].station;
        qs.length = collect(
            [qi](const ReplicationResult& r) { return r.per_queue[qi].time_weighted_length; });
        qs.wait = collect([qi](const ReplicationResult& r) { return r.per_queue[qi].mean_wait; });
        qs.max_wait =
            collect([qi](const ReplicationResult& r) { return r.per_queue[qi].max_wait; });
        report.queues.push_back(std::move(qs));
    }
    for (std::size_t pi = 0; pi < first.per_pool.size(); ++pi) {
        PoolSummary ps;
        ps.pool = first.per_pool[pi].pool;
        ps.kind = first.per_pool[pi].kind;
        ps.capacity = first.per_pool[pi].capacity;
        ps.busy_hours =
            collect([pi](const ReplicationResult& r) { return r.per_pool[pi].busy_hours; });
        ps.idle_hours =
            collect([pi](const ReplicationResult& r) { return r.per_pool[pi].idle_hours; });
        ps.utilization =
            collect([pi](const ReplicationResult& r) { return r.per_pool[pi].utilization; });
        report.pools.push_back(std::move(ps));
    }

    return report;
}

const char* to_string(EntityState state) {
    switch (state) {
    case EntityState::InQueue:
        return "in_queue";
    case EntityState::InService:
        return "in_service";
    case EntityState::InTransport:
        return "in_transport";
    case EntityState::Departed:
        return "departed";
    case EntityState::WipAtHorizon:
        return "wip_at_horizon";
    }
    return "?";
}

} // namespace colorline
