#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "colorline/errors.hpp"
#include "colorline/stats.hpp"

using namespace colorline;

using Series = std::vector<std::pair<double, double>>;

TEST_CASE("time-weighted average of all-zero series is zero") {
    const Series s{{0.0, 0.0}};
    CHECK(time_weighted_average(s, 10.0) == 0.0);
}

TEST_CASE("time-weighted average matches the hand integral") {
    // 0 for 2 h, 3 for 1 h, 1 for 1 h over a 4 h horizon:
    // (0*2 + 3*1 + 1*1) / 4 = 1.0
    const Series s{{0.0, 0.0}, {2.0, 3.0}, {3.0, 1.0}};
    CHECK(time_weighted_average(s, 4.0) == doctest::Approx(1.0));
}

TEST_CASE("constant trajectory averages to itself") {
    const Series s{{0.0, 7.5}};
    CHECK(time_weighted_average(s, 123.0) == doctest::Approx(7.5));
}

TEST_CASE("empty series is an error") {
    const Series s{};
    CHECK_THROWS_AS((void)time_weighted_average(s, 4.0), EmptySeriesError);
}

TEST_CASE("time-weighted average is bounded by series extremes") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    std::uniform_real_distribution<double> gap(0.01, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Series s;
        double t = 0.0;
        double lo = 1e300, hi = -1e300;
        const int n = 1 + static_cast<int>(gen() % 20);
        for (int i = 0; i < n; ++i) {
            const double v = value(gen);
            s.push_back({t, v});
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            t += gap(gen);
        }
        const double avg = time_weighted_average(s, t + gap(gen));
        CHECK(avg >= lo - 1e-12);
        CHECK(avg <= hi + 1e-12);
    }
}

TEST_CASE("accumulator add() tracks deltas") {
    TimeWeightedAccumulator acc;
    acc.add(1.0, +1.0);
    acc.add(2.0, +1.0);
    acc.add(3.0, -2.0);
    // 0 over [0,1), 1 over [1,2), 2 over [2,3), 0 after
    CHECK(acc.average_over(4.0) == doctest::Approx(0.75));
}

TEST_CASE("two observations give the textbook half-width") {
    // n=2: t(0.975, 1) = 12.706, s = sqrt(2), hw = 12.706 * sqrt(2)/sqrt(2)
    const std::vector<double> xs{4.0, 6.0};
    const Summary s = summarize(xs);
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.ci95_halfwidth == doctest::Approx(12.7062047).epsilon(1e-6));
}

TEST_CASE("single observation has width zero") {
    const std::vector<double> xs{3.25};
    const Summary s = summarize(xs);
    CHECK(s.mean == 3.25);
    CHECK(s.stddev == 0.0);
    CHECK(s.ci95_halfwidth == 0.0);
}

TEST_CASE("identical observations collapse the spread") {
    const std::vector<double> xs(50, 9.0);
    const Summary s = summarize(xs);
    CHECK(s.mean == doctest::Approx(9.0));
    CHECK(s.stddev == doctest::Approx(0.0));
    CHECK(s.ci95_halfwidth == doctest::Approx(0.0));
}

TEST_CASE("no observations is an error") {
    const std::vector<double> xs;
    CHECK_THROWS_AS((void)summarize(xs), EmptyListError);
}

TEST_CASE("student t critical values match the tables") {
    CHECK(student_t_quantile(0.975, 1.0) == doctest::Approx(12.7062047).epsilon(1e-6));
    CHECK(student_t_quantile(0.975, 49.0) == doctest::Approx(2.0095752).epsilon(1e-6));
    CHECK(student_t_quantile(0.975, 9.0) == doctest::Approx(2.2621572).epsilon(1e-6));
}
