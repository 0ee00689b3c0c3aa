#include <doctest.h>

#include <random>

#include "colorline/engine.hpp"
#include "colorline/errors.hpp"
#include "colorline/fixture.hpp"
#include "model_builders.hpp"

using namespace colorline;
namespace tb = colorline::testing;

TEST_CASE("a model with no arrival source produces nothing") {
    LineModel m = tb::single_station(DistributionSpec::constant(1.0),
                                     DistributionSpec::constant(0.5));
    m.source.reset();
    const auto r = run_replication(m, 1);
    CHECK(r.outputs == 0);
    CHECK(r.created == 0);
    CHECK(r.wip_at_horizon == 0);
    for (const auto& p : r.per_pool) CHECK(p.utilization == 0.0);
    for (const auto& q : r.per_queue) CHECK(q.time_weighted_length == 0.0);
}

TEST_CASE("deterministic single-station trace: 8 outputs, utilization one half, no waits") {
    const LineModel m = tb::single_station(DistributionSpec::constant(1.0),
                                           DistributionSpec::constant(0.5));
    const auto r = run_replication(m, 1);
    CHECK(r.outputs == 8);
    CHECK(r.per_pool[0].utilization == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.per_queue[0].mean_wait == 0.0);
    CHECK(r.per_queue[0].max_wait == 0.0);
    CHECK(r.per_queue[0].time_weighted_length == 0.0);
    // the 8 h arrival is created but its service ends beyond the horizon
    CHECK(r.created == 9);
    CHECK(r.wip_at_horizon == 1);
}

TEST_CASE("two-entity contention trace: second entity waits exactly one hour") {
    // capacity 1, service 2 h, arrivals at t=0 and t=1
    const LineModel m = tb::single_station(DistributionSpec::constant(1.0),
                                           DistributionSpec::constant(2.0), 1, 4.0);
    RunOptions opts;
    opts.capture_entities = true;
    const auto r = run_replication(m, 1, std::nullopt, opts);
    REQUIRE(r.entities.size() >= 2);
    const auto& second = r.entities[1];
    REQUIRE(second.history.size() == 1);
    CHECK(second.history[0].queue_enter == doctest::Approx(1.0));
    CHECK(second.history[0].service_start == doctest::Approx(2.0));
    CHECK(r.per_queue[0].max_wait == doctest::Approx(1.0));
}

TEST_CASE("same model and seed replay bit-identically") {
    const LineModel m = build_paper_line();
    const auto a = run_replication(m, 12345);
    const auto b = run_replication(m, 12345);
    CHECK(a == b);
    const auto c = run_replication(m, 54321);
    CHECK_FALSE(a == c);
}

TEST_CASE("entity conservation holds exactly") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> mean(0.05, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const LineModel m = tb::tandem(DistributionSpec::exponential(mean(gen)),
                                       DistributionSpec::exponential(mean(gen)),
                                       DistributionSpec::exponential(mean(gen)));
        const auto r = run_replication(m, 1000 + trial);
        CHECK(r.created == r.outputs + r.wip_at_horizon);
    }
    const auto r = run_replication(build_paper_line(), 99);
    CHECK(r.created == r.outputs + r.wip_at_horizon);
}

TEST_CASE("busy plus idle hours equal capacity times horizon for every pool") {
    const auto r = run_replication(build_paper_line(), 7);
    for (const auto& p : r.per_pool) {
        CHECK(p.busy_hours + p.idle_hours ==
              doctest::Approx(p.capacity * r.horizon).epsilon(1e-12));
        CHECK(p.utilization >= 0.0);
        CHECK(p.utilization <= 1.0);
    }
}

TEST_CASE("cost closure identities hold on every replication") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = run_replication(build_paper_line(), seed);
        CHECK(r.cost.value_added + r.cost.non_value_added == r.cost.busy);
        CHECK(r.cost.busy + r.cost.idle == r.cost.total);
    }
}

TEST_CASE("the event cap turns a nonterminating loop into a diagnosable error") {
    // Zero-length services and transports with a 99% rework loop at t=0
    // generate events forever without advancing the clock.
    LineModel m = tb::tandem(DistributionSpec::constant(0.5),
                             DistributionSpec::constant(0.0),
                             DistributionSpec::constant(0.0));
    QcSpec qc;
    qc.station = "s2";
    qc.fail_probability = 0.999999;
    qc.rework_target = "s1";
    m.qc = qc;
    m.routes[2] = RouteSpec{"s2",
                            {{"s1", 0.999999, DistributionSpec::constant(0.0)},
                             {std::string(kSinkNode), 0.000001, DistributionSpec::constant(0.0)}}};
    REQUIRE(validate(m).empty());
    RunOptions opts;
    opts.event_cap = 10'000;
    CHECK_THROWS_AS((void)run_replication(m, 1, std::nullopt, opts), DivergenceError);
}

TEST_CASE("raising pool capacity never delays any service start (monotone coupling)") {
    // Deterministic arrivals and services; compare service starts with
    // capacity 1 vs 2 on the same sample path.
    RunOptions opts;
    opts.capture_entities = true;
    const LineModel slow = tb::single_station(DistributionSpec::constant(0.25),
                                              DistributionSpec::constant(0.9), 1, 6.0);
    const LineModel fast = tb::single_station(DistributionSpec::constant(0.25),
                                              DistributionSpec::constant(0.9), 2, 6.0);
    const auto a = run_replication(slow, 5, std::nullopt, opts);
    const auto b = run_replication(fast, 5, std::nullopt, opts);
    REQUIRE(a.entities.size() == b.entities.size());
    for (std::size_t i = 0; i < a.entities.size(); ++i) {
        const auto& ha = a.entities[i].history;
        const auto& hb = b.entities[i].history;
        for (std::size_t v = 0; v < ha.size() && v < hb.size(); ++v) {
            if (ha[v].service_start < 0 || hb[v].service_start < 0) continue;
            CHECK(hb[v].service_start <= ha[v].service_start + 1e-12);
        }
    }
}

TEST_CASE("rework visits leave the value-added partition") {
    // Certain-ish rework once: fail probability 0.5, max_attempts 1, with a
    // seed chosen so at least one entity reworks.
    LineModel m = tb::tandem(DistributionSpec::constant(1.0), DistributionSpec::constant(0.1),
                             DistributionSpec::constant(0.1));
    QcSpec qc;
    qc.station = "s2";
    qc.fail_probability = 0.5;
    qc.rework_target = "s1";
    qc.max_attempts = 1;
    m.qc = qc;
    m.routes[2] = RouteSpec{"s2",
                            {{"s1", 0.5, DistributionSpec::constant(0.0)},
                             {std::string(kSinkNode), 0.5, DistributionSpec::constant(0.0)}}};
    REQUIRE(validate(m).empty());
    RunOptions opts;
    opts.capture_entities = true;
    const auto r = run_replication(m, 3, std::nullopt, opts);
    bool any_rework = false;
    for (const auto& e : r.entities) {
        if (e.qc_failures > 0) any_rework = true;
        CHECK(e.qc_failures <= 1); // max_attempts bound
    }
    REQUIRE(any_rework);
    // Repeat visits are booked as non-value-added busy time.
    double nva = 0.0;
    for (const auto& p : r.per_pool) nva += p.nva_busy_hours;
    CHECK(nva > 0.0);
}

TEST_CASE("departed entities pass QC exactly once as their final verdict") {
    LineModel m = tb::tandem(DistributionSpec::exponential(0.4),
                             DistributionSpec::exponential(0.2),
                             DistributionSpec::exponential(0.2));
    QcSpec qc;
    qc.station = "s2";
    qc.fail_probability = 0.3;
    qc.rework_target = "s1";
    m.qc = qc;
    m.routes[2] = RouteSpec{"s2",
                            {{"s1", 0.3, DistributionSpec::constant(0.0)},
                             {std::string(kSinkNode), 0.7, DistributionSpec::constant(0.0)}}};
    REQUIRE(validate(m).empty());
    RunOptions opts;
    opts.capture_entities = true;
    const auto r = run_replication(m, 17, std::nullopt, opts);
    std::uint64_t departed = 0;
    for (const auto& e : r.entities) {
        if (e.state == EntityState::Departed) {
            ++departed;
            CHECK(e.qc_passed);
        }
    }
    CHECK(departed == r.outputs);
}

TEST_CASE("horizon override controls the run length") {
    const LineModel m = tb::single_station(DistributionSpec::constant(1.0),
                                           DistributionSpec::constant(0.5));
    const auto r = run_replication(m, 1, 4.0);
    CHECK(r.horizon == 4.0);
    CHECK(r.outputs == 4);
}
