#pragma once

// Small model builders shared across the test suites.

#include <string>
#include <vector>

#include "colorline/model.hpp"

namespace colorline::testing {

inline PoolSpec machine(const std::string& id, int capacity, double busy_rate = 0.0,
                        double idle_rate = 0.0) {
    PoolSpec p;
    p.id = id;
    p.kind = PoolKind::Machine;
    p.capacity = capacity;
    p.busy_rate = busy_rate;
    p.idle_rate = idle_rate;
    return p;
}

inline PoolSpec operators(const std::string& id, int capacity, double busy_rate = 0.0,
                          double idle_rate = 0.0) {
    PoolSpec p;
    p.id = id;
    p.kind = PoolKind::Operator;
    p.capacity = capacity;
    p.busy_rate = busy_rate;
    p.idle_rate = idle_rate;
    return p;
}

inline RouteSpec direct(const std::string& from, const std::string& to,
                        DistributionSpec transport = DistributionSpec::constant(0.0)) {
    RouteSpec r;
    r.from = from;
    r.branches.push_back({to, 1.0, transport});
    return r;
}

// Source -> s1 -> Sink with zero transports.
inline LineModel single_station(DistributionSpec interarrival, DistributionSpec service,
                                int capacity = 1, double horizon = 8.0) {
    LineModel m;
    m.horizon_hours = horizon;
    SourceSpec src;
    src.interarrival = interarrival;
    src.batch_size = 1;
    m.source = src;
    m.pools = {machine("m1", capacity)};
    StationSpec s;
    s.id = "s1";
    s.machine_pool = "m1";
    s.service = service;
    m.stations = {s};
    m.routes = {direct(std::string(kSourceNode), "s1"), direct("s1", std::string(kSinkNode))};
    return m;
}

// Source -> s1 -> s2 -> Sink, operator pools per station.
inline LineModel tandem(DistributionSpec interarrival, DistributionSpec service1,
                        DistributionSpec service2, int machines1 = 1, int machines2 = 1,
                        int ops1 = 1, int ops2 = 1, double horizon = 8.0) {
    LineModel m;
    m.horizon_hours = horizon;
    SourceSpec src;
    src.interarrival = interarrival;
    src.batch_size = 1;
    m.source = src;
    m.pools = {machine("m1", machines1), machine("m2", machines2), operators("o1", ops1),
               operators("o2", ops2)};
    StationSpec s1;
    s1.id = "s1";
    s1.machine_pool = "m1";
    s1.operators_required = 1;
    s1.operator_pool = "o1";
    s1.service = service1;
    StationSpec s2;
    s2.id = "s2";
    s2.machine_pool = "m2";
    s2.operators_required = 1;
    s2.operator_pool = "o2";
    s2.service = service2;
    m.stations = {s1, s2};
    m.routes = {direct(std::string(kSourceNode), "s1"), direct("s1", "s2"),
                direct("s2", std::string(kSinkNode))};
    return m;
}

} // namespace colorline::testing
