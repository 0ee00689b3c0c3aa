#include <doctest.h>

#include <random>
#include <vector>

#include "colorline/errors.hpp"
#include "colorline/resource.hpp"

using namespace colorline;

namespace {

PoolRuntime make_pool(const char* id, int capacity) {
    PoolRuntime p;
    p.id = id;
    p.kind = PoolKind::Machine;
    p.capacity = capacity;
    return p;
}

} // namespace

TEST_CASE("an idle pool grants immediately with zero wait") {
    ResourceCoordinator rc({make_pool("m", 1)});
    const int req = rc.seize(0, 0, 1, 3.0);
    CHECK(rc.granted(req));
    CHECK(rc.request_info(req).grant_time == 3.0);
    CHECK(rc.request_info(req).grant_time - rc.request_info(req).enqueued_at == 0.0);
}

TEST_CASE("a contended unit queues and grants at release time") {
    // capacity 1, service 2 h; second entity arrives at t=1, granted at
    // t=2, waiting exactly 1 h
    ResourceCoordinator rc({make_pool("m", 1)});
    const int first = rc.seize(0, 0, 1, 0.0);
    REQUIRE(rc.granted(first));
    const int second = rc.seize(1, 0, 1, 1.0);
    CHECK_FALSE(rc.granted(second));
    rc.release_all(first, 2.0);
    rc.pump(2.0);
    CHECK(rc.granted(second));
    CHECK(rc.request_info(second).grant_time == 2.0);
    CHECK(rc.request_info(second).grant_time - rc.request_info(second).enqueued_at == 1.0);
}

TEST_CASE("requests beyond capacity can never be granted") {
    ResourceCoordinator rc({make_pool("m", 2)});
    CHECK_THROWS_AS((void)rc.seize(0, 0, 3, 0.0), QtyExceedsCapacityError);
}

TEST_CASE("busy time accrues for the held interval") {
    ResourceCoordinator rc({make_pool("m", 1)});
    const int req = rc.seize(0, 0, 1, 1.0);
    rc.release_all(req, 3.0);
    CHECK(rc.pool(0).busy_hours() == doctest::Approx(2.0));
}

TEST_CASE("releasing without holding is an error") {
    ResourceCoordinator rc({make_pool("m", 2)});
    const int req = rc.seize(0, 0, 1, 0.0);
    CHECK_THROWS_AS(rc.release(1, 0, 1, 1.0), NotHeldError);
    rc.release_all(req, 1.0);
    CHECK_THROWS_AS(rc.release_all(req, 2.0), NotHeldError);
}

TEST_CASE("partial release returns units and keeps the rest held") {
    ResourceCoordinator rc({make_pool("m", 3)});
    (void)rc.seize(0, 0, 3, 0.0);
    rc.release(0, 0, 2, 4.0);
    CHECK(rc.held_units(0, 0) == 1);
    CHECK(rc.pool(0).busy_hours() == doctest::Approx(8.0)); // 2 units x 4 h
    CHECK(rc.pool(0).free_units == 2);
}

TEST_CASE("grant order equals enqueue order (no overtaking)") {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 50; ++trial) {
        const int capacity = 1 + static_cast<int>(gen() % 3);
        ResourceCoordinator rc({make_pool("m", capacity)});
        std::vector<int> requests;
        double t = 0.0;
        for (int e = 0; e < 20; ++e) {
            t += 0.1;
            requests.push_back(
                rc.request(e, -1, {{0, 1 + static_cast<int>(gen() % capacity)}}, t, true));
            rc.pump(t);
        }
        // Release everything granted, in waves, pumping each time.
        for (int wave = 0; wave < 30; ++wave) {
            t += 1.0;
            for (int id : requests) {
                const auto& info = rc.request_info(id);
                if (info.granted && !info.released) {
                    rc.release_all(id, t);
                }
            }
            rc.pump(t);
        }
        // All granted, and grant times never decrease with enqueue order.
        double last_grant = -1.0;
        for (int id : requests) {
            const auto& info = rc.request_info(id);
            CHECK(info.granted);
            CHECK(info.grant_time >= last_grant);
            last_grant = info.grant_time;
        }
    }
}

TEST_CASE("a two-pool request needs the head of both queues") {
    ResourceCoordinator rc({make_pool("machine", 1), make_pool("ops", 2)});
    const int a = rc.request(0, 0, {{0, 1}, {1, 2}}, 0.0, true);
    rc.pump(0.0);
    REQUIRE(rc.granted(a));
    // b wants only the machine; c wants machine + ops
    const int b = rc.request(1, 0, {{0, 1}}, 0.5, true);
    const int c = rc.request(2, 0, {{1, 1}}, 0.6, true);
    rc.pump(0.6);
    CHECK_FALSE(rc.granted(b)); // machine still held by a
    CHECK_FALSE(rc.granted(c)); // ops held by a
    rc.release_all(a, 2.0);
    rc.pump(2.0);
    CHECK(rc.granted(b));
    CHECK(rc.granted(c));
}

TEST_CASE("finalize caps open grants at the horizon") {
    ResourceCoordinator rc({make_pool("m", 1)});
    (void)rc.seize(0, 0, 1, 6.0);
    rc.finalize(8.0);
    CHECK(rc.pool(0).busy_hours() == doctest::Approx(2.0));
}
