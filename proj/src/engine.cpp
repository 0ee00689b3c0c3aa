#include "colorline/engine.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "colorline/errors.hpp"
#include "colorline/event.hpp"
#include "colorline/model_json.hpp"
#include "colorline/resource.hpp"
#include "colorline/rng.hpp"
#include "colorline/stats.hpp"

namespace colorline {

namespace {

constexpr int kSinkIndex = -1;

struct BranchRt {
    int to = kSinkIndex; // station index, kSinkIndex = Sink
    double probability = 0.0;
    DistributionSpec transport;
    bool is_rework = false;
    int transport_stream = -1; // index into executor stream table
};

struct StationRt {
    int machine_pool = -1;
    int operator_pool = -1;
    int operators_required = 0;
    bool value_adding = true;
    bool overlap = false;
    bool is_qc = false;
    std::vector<BranchRt> branches; // outgoing routes
    int service_stream = -1;
    int routing_stream = -1;
    int qc_stream = -1;
};

struct EntityRt {
    double created_at = 0.0;
    EntityState state = EntityState::InQueue;
    int qc_failures = 0;
    bool qc_passed = false;
    double departed_at = -1.0;
    double queue_enter = 0.0;
    int request = -1;
    int pending_transport = 0; // overlap: transport already scheduled
    std::vector<std::uint16_t> visits;
    std::vector<Visit> history;
};

class Executor {
public:
    Executor(const LineModel& model, std::uint64_t seed, double horizon,
             const RunOptions& options)
        : model_(model), seed_(seed), horizon_(horizon), options_(options),
          coordinator_(make_pools(model)) {
        compile();
    }

    ReplicationResult run();

private:
    static std::vector<PoolRuntime> make_pools(const LineModel& model) {
        std::vector<PoolRuntime> pools;
        pools.reserve(model.pools.size());
        for (const auto& p : model.pools) {
            PoolRuntime rt;
            rt.id = p.id;
            rt.kind = p.kind;
            rt.capacity = p.capacity;
            rt.busy_rate = p.busy_rate;
            rt.idle_rate = p.idle_rate;
            pools.push_back(std::move(rt));
        }
        return pools;
    }

    int add_stream(std::string_view scope, StreamPurpose purpose) {
        streams_.push_back(RngStream::for_key(seed_, 0, scope, purpose));
        return static_cast<int>(streams_.size() - 1);
    }

    void compile() {
        const int n = static_cast<int>(model_.stations.size());
        stations_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto& spec = model_.stations[static_cast<std::size_t>(i)];
            auto& rt = stations_[static_cast<std::size_t>(i)];
            rt.machine_pool = model_.pool_index(spec.machine_pool);
            rt.operators_required = spec.operators_required;
            rt.operator_pool =
                spec.operators_required > 0 ? model_.pool_index(spec.operator_pool) : -1;
            rt.value_adding = spec.value_class == ValueClass::ValueAdding;
            rt.overlap = spec.overlap_with_outbound_transport;
            rt.service_stream = add_stream(spec.id, StreamPurpose::Service);
            rt.routing_stream = add_stream(spec.id, StreamPurpose::Routing);
        }
        if (model_.qc) {
            const int qi = model_.station_index(model_.qc->station);
            stations_[static_cast<std::size_t>(qi)].is_qc = true;
            stations_[static_cast<std::size_t>(qi)].qc_stream =
                add_stream(model_.qc->station, StreamPurpose::QcVerdict);
            qc_station_ = qi;
        }
        auto compile_branches = [this](const RouteSpec& route) {
            std::vector<BranchRt> out;
            for (const auto& b : route.branches) {
                BranchRt rt;
                rt.to = b.to == kSinkNode ? kSinkIndex : model_.station_index(b.to);
                rt.probability = b.probability;
                rt.transport = b.transport_time;
                rt.is_rework = model_.qc && route.from == model_.qc->station &&
                               b.to == model_.qc->rework_target;
                rt.transport_stream =
                    add_stream(route.from + "->" + b.to, StreamPurpose::Transport);
                out.push_back(std::move(rt));
            }
            return out;
        };
        for (const auto& route : model_.routes) {
            if (route.from == kSourceNode) {
                source_branches_ = compile_branches(route);
                source_routing_stream_ = add_stream(kSourceNode, StreamPurpose::Routing);
            } else {
                const int si = model_.station_index(route.from);
                stations_[static_cast<std::size_t>(si)].branches = compile_branches(route);
            }
        }
        if (model_.source) {
            interarrival_stream_ = add_stream(kSourceNode, StreamPurpose::Interarrival);
        }
        queue_lengths_.resize(static_cast<std::size_t>(n));
        waits_.resize(static_cast<std::size_t>(n));
    }

    RngStream& stream(int index) { return streams_[static_cast<std::size_t>(index)]; }

    int create_entity(double now) {
        EntityRt e;
        e.created_at = now;
        e.state = EntityState::InTransport;
        e.visits.assign(model_.stations.size(), 0);
        entities_.push_back(std::move(e));
        return static_cast<int>(entities_.size() - 1);
    }

    // Picks a branch with a single uniform draw; single-branch nodes draw
    // nothing so scenario variants stay stream-aligned.
    const BranchRt& pick_branch(const std::vector<BranchRt>& branches, RngStream& rng) {
        if (branches.size() == 1) return branches.front();
        const double u = rng.uniform();
        double cum = 0.0;
        for (const auto& b : branches) {
            cum += b.probability;
            if (u < cum) return b;
        }
        return branches.back();
    }

    void send_over(int entity, const BranchRt& branch, double now) {
        const double tau = branch.transport.sample(stream(branch.transport_stream));
        entities_[static_cast<std::size_t>(entity)].state = EntityState::InTransport;
        calendar_.schedule(now + tau, EventKind::TransportEnd, entity, branch.to);
    }

    void arrive(int entity, int station, double now) {
        auto& e = entities_[static_cast<std::size_t>(entity)];
        auto& st = stations_[static_cast<std::size_t>(station)];
        e.state = EntityState::InQueue;
        e.queue_enter = now;
        queue_lengths_[static_cast<std::size_t>(station)].add(now, +1.0);
        if (options_.capture_entities) {
            e.history.push_back({station, now, -1.0, -1.0});
        }
        std::vector<ResourceWant> wants{{st.machine_pool, 1}};
        if (st.operators_required > 0) {
            wants.push_back({st.operator_pool, st.operators_required});
        }
        const bool first_visit = e.visits[static_cast<std::size_t>(station)] == 0;
        e.request = coordinator_.request(entity, station, std::move(wants), now,
                                         st.value_adding && first_visit);
        pump(now);
    }

    void pump(double now) {
        for (int req_id : coordinator_.pump(now)) {
            start_service(req_id, now);
        }
    }

    void start_service(int req_id, double now) {
        const auto& req = coordinator_.request_info(req_id);
        const int entity = req.entity;
        const int station = req.station;
        auto& e = entities_[static_cast<std::size_t>(entity)];
        auto& st = stations_[static_cast<std::size_t>(station)];

        waits_[static_cast<std::size_t>(station)].add(now - e.queue_enter);
        queue_lengths_[static_cast<std::size_t>(station)].add(now, -1.0);
        ++e.visits[static_cast<std::size_t>(station)];
        e.state = EntityState::InService;
        if (options_.capture_entities && !e.history.empty()) {
            e.history.back().service_start = now;
        }

        const double service = model_.stations[static_cast<std::size_t>(station)].service.sample(
            stream(st.service_stream));
        calendar_.schedule(now + service, EventKind::ServiceEnd, entity, station);

        if (st.overlap && !st.branches.empty()) {
            // Outbound transport runs alongside the service: the downstream
            // arrival is at service_start + max(service, transport).
            const BranchRt& branch = pick_branch(st.branches, stream(st.routing_stream));
            const double tau = branch.transport.sample(stream(branch.transport_stream));
            calendar_.schedule(now + std::max(service, tau), EventKind::TransportEnd, entity,
                               branch.to);
            e.pending_transport = 1;
        } else {
            e.pending_transport = 0;
        }
    }

    void on_service_end(int entity, int station, double now) {
        auto& e = entities_[static_cast<std::size_t>(entity)];
        auto& st = stations_[static_cast<std::size_t>(station)];
        coordinator_.release_all(e.request, now);
        e.request = -1;
        if (options_.capture_entities && !e.history.empty()) {
            e.history.back().service_end = now;
        }
        if (st.is_qc) {
            calendar_.schedule(now, EventKind::QcVerdict, entity, station);
        } else if (e.pending_transport) {
            e.state = EntityState::InTransport; // already on its way
            e.pending_transport = 0;
        } else {
            const BranchRt& branch = pick_branch(st.branches, stream(st.routing_stream));
            send_over(entity, branch, now);
        }
        pump(now);
    }

    void on_qc_verdict(int entity, int station, double now) {
        auto& e = entities_[static_cast<std::size_t>(entity)];
        auto& st = stations_[static_cast<std::size_t>(station)];
        const auto& qc = *model_.qc;
        const double u = stream(st.qc_stream).uniform();
        const bool attempts_left = !qc.max_attempts || e.qc_failures < *qc.max_attempts;
        const bool fail = attempts_left && u < qc.fail_probability;
        if (fail) {
            ++e.qc_failures;
            for (const auto& b : st.branches) {
                if (b.is_rework) {
                    send_over(entity, b, now);
                    return;
                }
            }
            assert(false && "validated models always carry a rework branch");
        } else {
            e.qc_passed = true;
            // Re-use the verdict draw, rescaled onto the pass branches; one
            // uniform decides both the verdict and the branch.
            const double pf = qc.fail_probability;
            double v = pf < 1.0 ? (u - pf) / (1.0 - pf) : 0.0;
            if (v < 0.0) v = 0.0; // forced pass after max_attempts
            double cum = 0.0;
            const BranchRt* chosen = nullptr;
            for (const auto& b : st.branches) {
                if (b.is_rework) continue;
                chosen = &b;
                cum += b.probability / (1.0 - pf);
                if (v < cum) break;
            }
            assert(chosen != nullptr);
            send_over(entity, *chosen, now);
        }
    }

    void on_transport_end(int entity, int station, double now) {
        auto& e = entities_[static_cast<std::size_t>(entity)];
        if (station == kSinkIndex) {
            e.state = EntityState::Departed;
            e.departed_at = now;
            ++outputs_;
        } else {
            arrive(entity, station, now);
        }
    }

    void on_source_arrival(double now) {
        const auto& src = *model_.source;
        for (int b = 0; b < src.batch_size; ++b) {
            const int entity = create_entity(now);
            ++created_;
            const BranchRt& branch =
                pick_branch(source_branches_, stream(source_routing_stream_));
            send_over(entity, branch, now);
        }
        const double gap = src.interarrival.sample(stream(interarrival_stream_));
        calendar_.schedule(now + gap, EventKind::EntityArrival);
    }

    ReplicationResult finalize();

    const LineModel& model_;
    std::uint64_t seed_;
    double horizon_;
    RunOptions options_;

    EventCalendar calendar_;
    ResourceCoordinator coordinator_;
    std::vector<RngStream> streams_;
    std::vector<StationRt> stations_;
    std::vector<BranchRt> source_branches_;
    int source_routing_stream_ = -1;
    int interarrival_stream_ = -1;
    int qc_station_ = -1;

    std::vector<EntityRt> entities_;
    std::vector<TimeWeightedAccumulator> queue_lengths_;
    std::vector<TallyAccumulator> waits_;
    std::uint64_t outputs_ = 0;
    std::uint64_t created_ = 0;
    std::uint64_t events_ = 0;
};

ReplicationResult Executor::run() {
    calendar_.schedule(horizon_, EventKind::HorizonEnd);
    if (model_.source) {
        // The shift starts with material present: first arrival at t=0.
        calendar_.schedule(0.0, EventKind::EntityArrival);
    }
    while (auto ev = calendar_.advance()) {
        if (++events_ > options_.event_cap) {
            throw DivergenceError("event cap " + std::to_string(options_.event_cap) +
                                  " exceeded at t=" + std::to_string(ev->time) +
                                  "; the model is likely nonterminating");
        }
        switch (ev->kind) {
        case EventKind::HorizonEnd:
            return finalize();
        case EventKind::EntityArrival:
            on_source_arrival(ev->time);
            break;
        case EventKind::TransportEnd:
            on_transport_end(ev->entity, ev->station, ev->time);
            break;
        case EventKind::ServiceEnd:
            on_service_end(ev->entity, ev->station, ev->time);
            break;
        case EventKind::QcVerdict:
            on_qc_verdict(ev->entity, ev->station, ev->time);
            break;
        }
    }
    return finalize();
}

ReplicationResult Executor::finalize() {
    ReplicationResult result;
    result.seed = seed_;
    result.horizon = horizon_;
    result.model_fp = model_fingerprint(model_);
    result.outputs = outputs_;
    result.created = created_;
    result.wip_at_horizon = created_ - outputs_;
    result.events_executed = events_;

    coordinator_.finalize(horizon_);

    for (std::size_t i = 0; i < model_.stations.size(); ++i) {
        QueueStats q;
        q.station = model_.stations[i].id;
        q.time_weighted_length = queue_lengths_[i].average_over(horizon_);
        q.mean_wait = waits_[i].mean();
        q.max_wait = waits_[i].max();
        q.wait_count = waits_[i].count();
        result.per_queue.push_back(std::move(q));
    }

    std::vector<PoolCostInput> cost_inputs;
    for (std::size_t i = 0; i < coordinator_.pool_count(); ++i) {
        const PoolRuntime& p = coordinator_.pool(static_cast<int>(i));
        PoolUsage u;
        u.pool = p.id;
        u.kind = p.kind;
        u.capacity = p.capacity;
        u.va_busy_hours = p.va_busy_hours;
        u.nva_busy_hours = p.nva_busy_hours;
        u.busy_hours = p.busy_hours();
        u.idle_hours = static_cast<double>(p.capacity) * horizon_ - u.busy_hours;
        u.utilization =
            p.capacity > 0 ? u.busy_hours / (static_cast<double>(p.capacity) * horizon_) : 0.0;
        u.busy_rate = p.busy_rate;
        u.idle_rate = p.idle_rate;
        cost_inputs.push_back(
            {u.va_busy_hours, u.nva_busy_hours, u.idle_hours, u.busy_rate, u.idle_rate});
        result.per_pool.push_back(std::move(u));
    }
    result.cost = compute_costs(cost_inputs);

    if (options_.capture_entities) {
        for (std::size_t i = 0; i < entities_.size(); ++i) {
            const auto& e = entities_[i];
            EntityRecord rec;
            rec.id = static_cast<int>(i);
            rec.created_at = e.created_at;
            rec.state = e.state == EntityState::Departed ? EntityState::Departed
                                                         : EntityState::WipAtHorizon;
            rec.qc_failures = e.qc_failures;
            rec.qc_passed = e.qc_passed;
            rec.departed_at = e.departed_at;
            rec.history = e.history;
            result.entities.push_back(std::move(rec));
        }
    }
    return result;
}

} // namespace

ReplicationResult run_replication(const LineModel& model, std::uint64_t seed,
                                  std::optional<double> horizon, const RunOptions& options) {
    ensure_valid(model);
    const double h = horizon.value_or(model.horizon_hours);
    if (!(h > 0.0)) throw SchemaError("horizon must be > 0");
    Executor exec(model, seed, h, options);
    return exec.run();
}

} // namespace colorline
