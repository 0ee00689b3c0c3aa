#include "colorline/fixture.hpp"

namespace colorline {

namespace {

using namespace fixture_ids;

PoolSpec machine_pool(const char* id, int capacity) {
    PoolSpec p;
    p.id = id;
    p.kind = PoolKind::Machine;
    p.capacity = capacity;
    p.busy_rate = 110.0;
    p.idle_rate = 55.0;
    return p;
}

PoolSpec operator_pool(const char* id, int capacity) {
    PoolSpec p;
    p.id = id;
    p.kind = PoolKind::Operator;
    p.capacity = capacity;
    p.busy_rate = 60.0;
    p.idle_rate = 35.0;
    return p;
}

StationSpec station(const char* id, const char* machines, int ops, const char* op_pool,
                    double service_mean, ValueClass vc) {
    StationSpec s;
    s.id = id;
    s.machine_pool = machines;
    s.operators_required = ops;
    if (ops > 0) s.operator_pool = op_pool;
    s.service = DistributionSpec::exponential(service_mean);
    s.value_class = vc;
    return s;
}

RouteSpec hop(const std::string& from, const std::string& to, double transport_hours) {
    RouteSpec r;
    r.from = from;
    r.branches.push_back({to, 1.0, DistributionSpec::constant(transport_hours)});
    return r;
}

} // namespace

LineModel build_paper_line(const FixtureParams& params) {
    constexpr double kFailProbability = 0.10;
    constexpr double kShortHop = 0.02;     // adjacent stations, hours
    constexpr double kMixerHop = 0.03;     // caldron moves between mixers
    constexpr double kLabHop = 0.15;       // the lab sits far from the line
    // The automatic mode packs faster than a manual bench.
    const double auto_packing_service = 0.66 * params.manual_packing_service;

    LineModel m;
    m.horizon_hours = 8.0;

    // One shift-load of caldrons arrives when the shift starts; the next
    // load always falls beyond the 8 h horizon.
    SourceSpec source;
    source.interarrival = DistributionSpec::uniform(30.0, 50.0);
    source.batch_size = params.batch_size;
    m.source = source;

    m.pools = {
        machine_pool("resin_station", 1),
        machine_pool("paste_mixer", 1),
        machine_pool(kPermilMachines, 2),
        machine_pool("solvent_mixers", 2),
        machine_pool("qc_instruments", 1),
        machine_pool("bascule", 1),
        machine_pool("packing_machine", 1),
        machine_pool("packing_bench_a", 1),
        machine_pool("packing_bench_b", 1),
        operator_pool("resin_operators", 1),
        operator_pool("paste_operators", 1),
        operator_pool(kColorOperators, 2),
        operator_pool("solvent_operators", 2),
        operator_pool("qc_operators", 1),
        operator_pool("weighing_operators", 1),
        operator_pool(kPackOperators, 5),
    };

    m.stations = {
        station(kResin, "resin_station", 1, "resin_operators", params.resin_service,
                ValueClass::ValueAdding),
        station(kPaste, "paste_mixer", 1, "paste_operators", params.paste_service,
                ValueClass::ValueAdding),
        station(kColor, kPermilMachines, 1, kColorOperators, params.color_service,
                ValueClass::ValueAdding),
        station(kSolvent, "solvent_mixers", 1, "solvent_operators", params.solvent_service,
                ValueClass::ValueAdding),
        station(kQc, "qc_instruments", 1, "qc_operators", params.qc_service,
                ValueClass::NonValueAdding),
        station(kWeighing, "bascule", 1, "weighing_operators", params.weighing_service,
                ValueClass::NonValueAdding),
        station(kPackAuto, "packing_machine", 0, "", auto_packing_service,
                ValueClass::ValueAdding),
        station(kPackManualA, "packing_bench_a", 1, kPackOperators,
                params.manual_packing_service, ValueClass::ValueAdding),
        station(kPackManualB, "packing_bench_b", 1, kPackOperators,
                params.manual_packing_service, ValueClass::ValueAdding),
    };

    m.routes.push_back(hop(std::string(kSourceNode), kResin, kShortHop));
    m.routes.push_back(hop(kResin, kPaste, kShortHop));
    m.routes.push_back(hop(kPaste, kColor, kMixerHop));
    m.routes.push_back(hop(kColor, kSolvent, kMixerHop));
    m.routes.push_back(hop(kSolvent, kQc, kLabHop));

    RouteSpec qc_route;
    qc_route.from = kQc;
    qc_route.branches.push_back(
        {kSolvent, kFailProbability, DistributionSpec::constant(kLabHop)});
    qc_route.branches.push_back(
        {kWeighing, 1.0 - kFailProbability, DistributionSpec::constant(kLabHop)});
    m.routes.push_back(qc_route);

    RouteSpec weigh_route;
    weigh_route.from = kWeighing;
    weigh_route.branches.push_back({kPackAuto, 0.34, DistributionSpec::constant(kShortHop)});
    weigh_route.branches.push_back({kPackManualA, 0.33, DistributionSpec::constant(kShortHop)});
    weigh_route.branches.push_back({kPackManualB, 0.33, DistributionSpec::constant(kShortHop)});
    m.routes.push_back(weigh_route);

    m.routes.push_back(hop(kPackAuto, std::string(kSinkNode), kShortHop));
    m.routes.push_back(hop(kPackManualA, std::string(kSinkNode), kShortHop));
    m.routes.push_back(hop(kPackManualB, std::string(kSinkNode), kShortHop));

    QcSpec qc;
    qc.station = kQc;
    qc.fail_probability = kFailProbability;
    qc.rework_target = kSolvent;
    m.qc = qc;

    return m;
}

} // namespace colorline
