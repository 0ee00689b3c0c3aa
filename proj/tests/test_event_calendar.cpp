#include <doctest.h>

#include "colorline/event.hpp"

using namespace colorline;

TEST_CASE("calendar pops the minimum time first") {
    EventCalendar cal;
    cal.schedule(5.0, EventKind::ServiceEnd);
    cal.schedule(3.0, EventKind::ServiceEnd);
    auto ev = cal.advance();
    REQUIRE(ev.has_value());
    CHECK(ev->time == 3.0);
    CHECK(cal.clock() == 3.0);
}

TEST_CASE("equal time and kind pop in insertion order") {
    EventCalendar cal;
    const Event a = cal.schedule(4.0, EventKind::TransportEnd, 1);
    const Event b = cal.schedule(4.0, EventKind::TransportEnd, 2);
    CHECK(a.seq < b.seq);
    CHECK(cal.advance()->entity == 1);
    CHECK(cal.advance()->entity == 2);
}

TEST_CASE("scheduling into the past fails") {
    EventCalendar cal;
    cal.schedule(2.0, EventKind::ServiceEnd);
    cal.advance(); // clock = 2
    CHECK_THROWS_AS(cal.schedule(1.0, EventKind::ServiceEnd), PastTimeError);
}

TEST_CASE("empty calendar yields the empty sentinel") {
    EventCalendar cal;
    CHECK_FALSE(cal.advance().has_value());
}

TEST_CASE("clock advances monotonically across pops") {
    EventCalendar cal;
    cal.schedule(2.0, EventKind::ServiceEnd);
    cal.schedule(7.0, EventKind::ServiceEnd);
    CHECK(cal.advance()->time == 2.0);
    CHECK(cal.clock() == 2.0);
    CHECK(cal.advance()->time == 7.0);
    CHECK(cal.clock() == 7.0);
}

TEST_CASE("service ends settle before same-instant arrivals, horizon fires last") {
    EventCalendar cal;
    cal.schedule(4.0, EventKind::HorizonEnd);
    cal.schedule(4.0, EventKind::EntityArrival, 7);
    cal.schedule(4.0, EventKind::TransportEnd, 8);
    cal.schedule(4.0, EventKind::QcVerdict, 9);
    cal.schedule(4.0, EventKind::ServiceEnd, 10);
    CHECK(cal.advance()->kind == EventKind::ServiceEnd);
    CHECK(cal.advance()->kind == EventKind::QcVerdict);
    CHECK(cal.advance()->kind == EventKind::TransportEnd);
    CHECK(cal.advance()->kind == EventKind::EntityArrival);
    CHECK(cal.advance()->kind == EventKind::HorizonEnd);
}
