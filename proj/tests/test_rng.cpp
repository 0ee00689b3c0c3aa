#include <doctest.h>

#include "colorline/rng.hpp"

using namespace colorline;

TEST_CASE("identical keys replay identical sequences") {
    auto a = RngStream::for_key(1, 0, "color_production", StreamPurpose::Service);
    auto b = RngStream::for_key(1, 0, "color_production", StreamPurpose::Service);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("different scopes, purposes and replications give different streams") {
    auto base = RngStream::for_key(1, 0, "color_production", StreamPurpose::Service);
    auto other_scope = RngStream::for_key(1, 0, "paste_mixing", StreamPurpose::Service);
    auto other_purpose = RngStream::for_key(1, 0, "color_production", StreamPurpose::Transport);
    auto other_rep = RngStream::for_key(1, 1, "color_production", StreamPurpose::Service);
    auto other_seed = RngStream::for_key(2, 0, "color_production", StreamPurpose::Service);
    const auto first = base.next_u64();
    CHECK(first != other_scope.next_u64());
    CHECK(first != other_purpose.next_u64());
    CHECK(first != other_rep.next_u64());
    CHECK(first != other_seed.next_u64());
}

TEST_CASE("uniform draws live in [0,1)") {
    RngStream s(20240117);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform sample mean is near one half") {
    RngStream s(7);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) sum += s.uniform();
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

// Frozen golden values: the generator constants are part of the on-disk
// contract (seeds must replay across platforms and releases).
TEST_CASE("sequence portability regression") {
    RngStream s(12345);
    CHECK(s.next_u64() == 3546153316706772682ULL);
    CHECK(s.next_u64() == 17407118097919791796ULL);
    CHECK(s.next_u64() == 17684816822052960254ULL);
}
