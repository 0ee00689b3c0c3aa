#include <doctest.h>

#include <random>
#include <vector>

#include "colorline/errors.hpp"
#include "colorline/result.hpp"

using namespace colorline;

TEST_CASE("cost partition reproduces the reference totals") {
    // Hours at unit rates so the dollars equal the hours: a partition with
    // value-added 7436 and non-value-added 2035 must close to busy 9471,
    // and busy 9471 + idle 4418 to total 13889.
    const std::vector<PoolCostInput> usage{
        {7436.0, 2035.0, 4418.0, 1.0, 1.0},
    };
    const CostBreakdown c = compute_costs(usage);
    CHECK(c.value_added == doctest::Approx(7436.0));
    CHECK(c.non_value_added == doctest::Approx(2035.0));
    CHECK(c.busy == doctest::Approx(9471.0));
    CHECK(c.idle == doctest::Approx(4418.0));
    CHECK(c.total == doctest::Approx(13889.0));
    CHECK(c.value_added + c.non_value_added == c.busy);
    CHECK(c.busy + c.idle == c.total);
}

TEST_CASE("idle-only pool costs idle_rate x capacity x horizon") {
    // capacity 1, zero usage over 8 h at idle rate r: busy 0, idle 8r
    const double r = 13.0;
    const std::vector<PoolCostInput> usage{{0.0, 0.0, 8.0, 99.0, r}};
    const CostBreakdown c = compute_costs(usage);
    CHECK(c.busy == 0.0);
    CHECK(c.idle == doctest::Approx(8.0 * r));
    CHECK(c.total == doctest::Approx(8.0 * r));
}

TEST_CASE("negative hours are rejected") {
    const std::vector<PoolCostInput> usage{{-1.0, 0.0, 0.0, 1.0, 1.0}};
    CHECK_THROWS_AS((void)compute_costs(usage), NegativeTimeError);
}

TEST_CASE("cost closure identities hold exactly over random usages") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> hours(0.0, 500.0);
    std::uniform_real_distribution<double> rate(0.0, 200.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<PoolCostInput> usage;
        const int pools = 1 + static_cast<int>(gen() % 12);
        for (int p = 0; p < pools; ++p) {
            usage.push_back({hours(gen), hours(gen), hours(gen), rate(gen), rate(gen)});
        }
        const CostBreakdown c = compute_costs(usage);
        CHECK(c.value_added + c.non_value_added == c.busy);
        CHECK(c.busy + c.idle == c.total);
    }
}

TEST_CASE("cost per unit matches the reference ratios") {
    CHECK(cost_per_unit(13889.0, 38) == doctest::Approx(365.5).epsilon(1e-4));
    CHECK(cost_per_unit(13881.0, 51) == doctest::Approx(272.2).epsilon(1e-3));
    CHECK_THROWS_AS((void)cost_per_unit(1000.0, 0), ZeroOutputError);
}
