#include "colorline/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "colorline/errors.hpp"

namespace colorline {

int LineModel::headcount() const {
    int total = 0;
    for (const auto& p : pools) {
        if (p.kind == PoolKind::Operator) total += p.capacity;
    }
    return total;
}

const StationSpec* LineModel::find_station(std::string_view id) const {
    for (const auto& s : stations) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

const PoolSpec* LineModel::find_pool(std::string_view id) const {
    for (const auto& p : pools) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

const RouteSpec* LineModel::find_route_from(std::string_view from) const {
    for (const auto& r : routes) {
        if (r.from == from) return &r;
    }
    return nullptr;
}

int LineModel::station_index(std::string_view id) const {
    for (std::size_t i = 0; i < stations.size(); ++i) {
        if (stations[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

int LineModel::pool_index(std::string_view id) const {
    for (std::size_t i = 0; i < pools.size(); ++i) {
        if (pools[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

namespace {

constexpr double kProbabilityTolerance = 1e-9;

bool is_reserved(std::string_view id) { return id == kSourceNode || id == kSinkNode; }

void check_dist(std::vector<std::string>& out, const DistributionSpec& d,
                const std::string& where) {
    for (const auto& v : d.violations()) {
        out.push_back(where + ": " + v);
    }
}

} // namespace

std::vector<std::string> validate(const LineModel& model) {
    std::vector<std::string> out;
    auto bad = [&out](const std::string& msg) { out.push_back(msg); };

    // --- pools ---
    std::unordered_set<std::string> pool_ids;
    for (const auto& p : model.pools) {
        if (p.id.empty()) bad("pool with empty id");
        if (is_reserved(p.id)) bad("pool id '" + p.id + "' is reserved");
        if (!pool_ids.insert(p.id).second) bad("duplicate pool id '" + p.id + "'");
        if (p.capacity < 0) bad("pool '" + p.id + "': capacity must be >= 0");
        if (!(p.busy_rate >= 0.0) || !std::isfinite(p.busy_rate))
            bad("pool '" + p.id + "': busy_rate must be finite and >= 0");
        if (!(p.idle_rate >= 0.0) || !std::isfinite(p.idle_rate))
            bad("pool '" + p.id + "': idle_rate must be finite and >= 0");
    }

    // --- stations ---
    std::unordered_set<std::string> station_ids;
    for (const auto& s : model.stations) {
        if (s.id.empty()) bad("station with empty id");
        if (is_reserved(s.id)) bad("station id '" + s.id + "' is reserved");
        if (!station_ids.insert(s.id).second) bad("duplicate station id '" + s.id + "'");
        const PoolSpec* mp = model.find_pool(s.machine_pool);
        if (mp == nullptr) {
            bad("station '" + s.id + "': machine pool '" + s.machine_pool + "' does not exist");
        } else {
            if (mp->kind != PoolKind::Machine)
                bad("station '" + s.id + "': pool '" + mp->id + "' is not a machine pool");
            if (mp->capacity < 1)
                bad("station '" + s.id + "': machine count must be >= 1");
        }
        if (s.operators_required < 0) bad("station '" + s.id + "': operators_required < 0");
        if (s.operators_required > 0) {
            const PoolSpec* op = model.find_pool(s.operator_pool);
            if (op == nullptr) {
                bad("station '" + s.id + "': operator pool '" + s.operator_pool +
                    "' does not exist");
            } else {
                if (op->kind != PoolKind::Operator)
                    bad("station '" + s.id + "': pool '" + op->id + "' is not an operator pool");
                if (s.operators_required > op->capacity)
                    bad("station '" + s.id + "': operators_required " +
                        std::to_string(s.operators_required) + " exceeds capacity of pool '" +
                        op->id + "' (" + std::to_string(op->capacity) + ")");
            }
        } else if (!s.operator_pool.empty() && model.find_pool(s.operator_pool) == nullptr) {
            bad("station '" + s.id + "': operator pool '" + s.operator_pool + "' does not exist");
        }
        check_dist(out, s.service, "station '" + s.id + "' service");
    }

    // --- routes ---
    std::unordered_set<std::string> route_froms;
    for (const auto& r : model.routes) {
        if (r.from != kSourceNode && station_ids.count(r.from) == 0) {
            bad("route from unknown station '" + r.from + "'");
        }
        if (!route_froms.insert(r.from).second) {
            bad("multiple route entries from '" + r.from + "'");
        }
        if (r.branches.empty()) {
            bad("route from '" + r.from + "' has no branches");
            continue;
        }
        double prob_sum = 0.0;
        for (const auto& b : r.branches) {
            if (b.to != kSinkNode && station_ids.count(b.to) == 0) {
                bad("route " + r.from + " -> unknown station '" + b.to + "'");
            }
            if (!(b.probability >= 0.0 && b.probability <= 1.0)) {
                bad("route " + r.from + " -> " + b.to + ": probability out of [0,1]");
            }
            prob_sum += b.probability;
            check_dist(out, b.transport_time, "route " + r.from + " -> " + b.to + " transport");
        }
        if (std::abs(prob_sum - 1.0) > kProbabilityTolerance) {
            std::ostringstream oss;
            oss << "route from '" << r.from << "': probabilities sum to " << prob_sum;
            bad(oss.str());
        }
    }

    // --- qc ---
    std::optional<std::pair<std::string, std::string>> rework_edge;
    if (model.qc) {
        const auto& qc = *model.qc;
        if (station_ids.count(qc.station) == 0) {
            bad("qc station '" + qc.station + "' does not exist");
        }
        if (station_ids.count(qc.rework_target) == 0) {
            bad("qc rework target '" + qc.rework_target + "' does not exist");
        }
        if (!(qc.fail_probability >= 0.0 && qc.fail_probability < 1.0)) {
            bad("qc fail_probability must be in [0,1)");
        }
        if (qc.max_attempts && *qc.max_attempts < 1) {
            bad("qc max_attempts must be >= 1 when bounded");
        }
        const StationSpec* qs = model.find_station(qc.station);
        if (qs != nullptr && qs->overlap_with_outbound_transport) {
            bad("station '" + qc.station +
                "': overlap_with_outbound_transport is not allowed on the QC station");
        }
        const RouteSpec* qr = model.find_route_from(qc.station);
        if (qr != nullptr) {
            const RouteBranch* rework = nullptr;
            for (const auto& b : qr->branches) {
                if (b.to == qc.rework_target) rework = &b;
            }
            if (rework == nullptr) {
                bad("qc: route " + qc.station + " -> " + qc.rework_target +
                    " (rework branch) missing from routes");
            } else {
                if (std::abs(rework->probability - qc.fail_probability) > kProbabilityTolerance) {
                    bad("qc: rework branch probability does not equal fail_probability");
                }
                if (qr->branches.size() < 2 && qc.fail_probability > 0.0) {
                    bad("qc: station '" + qc.station + "' has no pass branch");
                }
            }
            rework_edge = {qc.station, qc.rework_target};
        }
    }

    // --- source / horizon ---
    if (model.source) {
        check_dist(out, model.source->interarrival, "source interarrival");
        if (model.source->batch_size < 1) bad("source batch_size must be >= 1");
    }
    if (!(model.horizon_hours > 0.0) || !std::isfinite(model.horizon_hours)) {
        bad("horizon_hours must be finite and > 0");
    }

    // --- graph structure (only meaningful once names resolved) ---
    if (!out.empty()) return out;

    // Pass-edge adjacency: route edges minus the QC rework edge. Nodes are
    // station indices; -2 = Source, -3 = Sink.
    const int n = static_cast<int>(model.stations.size());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1); // slot n = Source
    auto node_of = [&](const std::string& id) -> int {
        if (id == kSourceNode) return n;
        return model.station_index(id);
    };
    bool sink_seen = false;
    std::vector<bool> reaches_sink(static_cast<std::size_t>(n) + 1, false);
    for (const auto& r : model.routes) {
        const int from = node_of(r.from);
        for (const auto& b : r.branches) {
            if (rework_edge && r.from == rework_edge->first && b.to == rework_edge->second) {
                continue; // rework edge may close the only permitted cycle
            }
            if (b.to == kSinkNode) {
                reaches_sink[static_cast<std::size_t>(from)] = true;
                sink_seen = true;
                continue;
            }
            adj[static_cast<std::size_t>(from)].push_back(model.station_index(b.to));
        }
    }
    if (model.find_route_from(std::string(kSourceNode)) == nullptr) {
        bad("no route from Source");
    }
    if (!sink_seen) bad("no route reaches Sink");

    // Reachability from Source.
    std::vector<bool> reachable(static_cast<std::size_t>(n) + 1, false);
    std::vector<int> stack{n};
    reachable[static_cast<std::size_t>(n)] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!reachable[static_cast<std::size_t>(v)]) {
                reachable[static_cast<std::size_t>(v)] = true;
                stack.push_back(v);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!reachable[static_cast<std::size_t>(i)]) {
            bad("station '" + model.stations[static_cast<std::size_t>(i)].id +
                "' is not reachable from Source");
        }
    }

    // Sink reachability from every station (over pass edges).
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u <= n; ++u) {
            if (reaches_sink[static_cast<std::size_t>(u)]) continue;
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (reaches_sink[static_cast<std::size_t>(v)]) {
                    reaches_sink[static_cast<std::size_t>(u)] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (reachable[static_cast<std::size_t>(i)] && !reaches_sink[static_cast<std::size_t>(i)]) {
            bad("station '" + model.stations[static_cast<std::size_t>(i)].id +
                "' cannot reach Sink");
        }
    }

    // Acyclicity of the pass-edge graph (the QC rework edge was excluded).
    std::vector<int> color(static_cast<std::size_t>(n) + 1, 0);
    std::function<bool(int)> has_cycle = [&](int u) {
        color[static_cast<std::size_t>(u)] = 1;
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (color[static_cast<std::size_t>(v)] == 1) return true;
            if (color[static_cast<std::size_t>(v)] == 0 && has_cycle(v)) return true;
        }
        color[static_cast<std::size_t>(u)] = 2;
        return false;
    };
    if (has_cycle(n)) {
        bad("route graph contains a cycle other than the QC rework loop");
    }

    return out;
}

void ensure_valid(const LineModel& model) {
    auto violations = validate(model);
    if (violations.empty()) return;
    std::ostringstream oss;
    oss << "invalid model (" << violations.size() << " violation(s)):";
    for (const auto& v : violations) oss << "\n  - " << v;
    throw SchemaError(oss.str());
}

const char* to_string(PoolKind kind) {
    return kind == PoolKind::Machine ? "machine" : "operator";
}

const char* to_string(ValueClass vc) {
    return vc == ValueClass::ValueAdding ? "value_adding" : "non_value_adding";
}

} // namespace colorline
