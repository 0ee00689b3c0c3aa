#include "colorline/analysis.hpp"

#include <algorithm>

#include "colorline/errors.hpp"

namespace colorline {

namespace {

double pool_utilization(const SummaryReport& summary, const std::string& pool_id) {
    for (const auto& p : summary.pools) {
        if (p.pool == pool_id) return p.utilization.mean;
    }
    throw MissingStationError("pool '" + pool_id + "' missing from summary");
}

double queue_wait(const SummaryReport& summary, const std::string& station_id) {
    for (const auto& q : summary.queues) {
        if (q.station == station_id) return q.wait.mean;
    }
    throw MissingStationError("station '" + station_id + "' missing from summary");
}

// Pass-edge adjacency (the QC rework edge excluded); index n = Source.
std::vector<std::vector<int>> pass_adjacency(const LineModel& model) {
    const int n = static_cast<int>(model.stations.size());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& r : model.routes) {
        const int from = r.from == kSourceNode ? n : model.station_index(r.from);
        if (from < 0) continue;
        for (const auto& b : r.branches) {
            if (b.to == kSinkNode) continue;
            if (model.qc && r.from == model.qc->station && b.to == model.qc->rework_target) {
                continue;
            }
            adj[static_cast<std::size_t>(from)].push_back(model.station_index(b.to));
        }
    }
    return adj;
}

std::vector<bool> reachable_from(const std::vector<std::vector<int>>& adj, int start) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (v >= 0 && !seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

} // namespace

BottleneckRanking detect_bottleneck(const SummaryReport& summary, const LineModel& model) {
    BottleneckRanking out;
    out.rule = "machine utilization, ties by mean queue wait, then declaration order";
    struct Row {
        BottleneckEntry entry;
        std::size_t order;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < model.stations.size(); ++i) {
        const auto& st = model.stations[i];
        BottleneckEntry e;
        e.station = st.id;
        e.utilization = pool_utilization(summary, st.machine_pool);
        e.score = e.utilization;
        e.mean_queue_wait = queue_wait(summary, st.id);
        rows.push_back({std::move(e), i});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.entry.score != b.entry.score) return a.entry.score > b.entry.score;
        if (a.entry.mean_queue_wait != b.entry.mean_queue_wait) {
            return a.entry.mean_queue_wait > b.entry.mean_queue_wait;
        }
        return a.order < b.order;
    });
    for (auto& r : rows) out.entries.push_back(std::move(r.entry));
    return out;
}

AroundProfile profile_around(const SummaryReport& summary, const LineModel& model,
                             std::string_view station) {
    const int target = model.station_index(station);
    if (target < 0) {
        throw MissingStationError("station '" + std::string(station) + "' does not exist");
    }
    const auto adj = pass_adjacency(model);
    const int n = static_cast<int>(model.stations.size());

    const auto downstream_of_target = reachable_from(adj, target);

    AroundProfile profile;
    profile.station = std::string(station);

    double up_sum = 0.0;
    double down_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == target) continue;
        const auto& st = model.stations[static_cast<std::size_t>(i)];
        if (downstream_of_target[static_cast<std::size_t>(i)]) {
            profile.downstream.push_back(st.id);
            down_sum += pool_utilization(summary, st.machine_pool);
        } else {
            const auto reach_target = reachable_from(adj, i);
            if (reach_target[static_cast<std::size_t>(target)]) {
                profile.upstream.push_back(st.id);
                up_sum += pool_utilization(summary, st.machine_pool);
            }
        }
    }

    if (profile.upstream.empty()) {
        // First station on the path: the source always feeds it.
        profile.upstream_is_source = true;
        profile.upstream_mean = 1.0;
    } else {
        profile.upstream_mean = up_sum / static_cast<double>(profile.upstream.size());
    }
    if (profile.downstream.empty()) {
        profile.downstream_is_sink = true;
        profile.downstream_mean = 0.0;
    } else {
        profile.downstream_mean = down_sum / static_cast<double>(profile.downstream.size());
    }
    profile.verdict = profile.upstream_mean > profile.downstream_mean;
    return profile;
}

DiffReport compare_scenarios(const SummaryReport& base, const SummaryReport& alt,
                             std::string_view base_label, std::string_view alt_label) {
    if (base.line.size() != alt.line.size() || base.queues.size() != alt.queues.size() ||
        base.pools.size() != alt.pools.size()) {
        throw SchemaMismatchError("reports use different metric schemas");
    }
    DiffReport diff;
    diff.base_label = std::string(base_label);
    diff.alt_label = std::string(alt_label);
    for (std::size_t i = 0; i < base.line.size(); ++i) {
        const auto& b = base.line[i];
        const auto& a = alt.line[i];
        if (b.name != a.name) throw SchemaMismatchError("metric mismatch: " + b.name);
        DiffEntry e;
        e.metric = b.name;
        e.unit = b.unit;
        e.base = b.stats.mean;
        e.alt = a.stats.mean;
        e.delta = e.alt - e.base;
        if (e.base != 0.0) e.percent = 100.0 * e.delta / e.base;
        diff.metrics.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < base.pools.size(); ++i) {
        const auto& b = base.pools[i];
        const auto& a = alt.pools[i];
        if (b.pool != a.pool) throw SchemaMismatchError("pool mismatch: " + b.pool);
        if (b.kind != PoolKind::Operator) continue;
        diff.operator_utilization.push_back({b.pool, b.utilization.mean, a.utilization.mean});
    }
    for (std::size_t i = 0; i < base.queues.size(); ++i) {
        const auto& b = base.queues[i];
        const auto& a = alt.queues[i];
        if (b.station != a.station) throw SchemaMismatchError("queue mismatch: " + b.station);
        diff.queue_waits.push_back({b.station, b.wait.mean, a.wait.mean});
    }
    return diff;
}

} // namespace colorline
