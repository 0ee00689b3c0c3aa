#include <doctest.h>

#include <cmath>

#include "colorline/distribution.hpp"
#include "colorline/errors.hpp"

using namespace colorline;

TEST_CASE("constant ignores the stream entirely") {
    RngStream s(7);
    RngStream t(7);
    const auto d = DistributionSpec::constant(5.0);
    CHECK(d.sample(s) == 5.0);
    CHECK(d.sample(s) == 5.0);
    // no draws consumed: both streams still aligned
    CHECK(s.next_u64() == t.next_u64());
}

TEST_CASE("inverse CDF values match hand-computed quantiles") {
    // exponential: -mean * ln(1-u); at u = 0.5 this is -2 ln(0.5)
    CHECK(DistributionSpec::exponential(2.0).quantile(0.5) ==
          doctest::Approx(1.3862943611).epsilon(1e-9));
    // uniform: lo + u (hi - lo)
    CHECK(DistributionSpec::uniform(2.0, 4.0).quantile(0.25) == doctest::Approx(2.5));
    // symmetric triangular: the median is the mode
    CHECK(DistributionSpec::triangular(0.0, 1.0, 2.0).quantile(0.5) == doctest::Approx(1.0));
}

TEST_CASE("sampling consumes exactly one draw") {
    for (const auto& d : {DistributionSpec::exponential(1.5), DistributionSpec::uniform(0.0, 2.0),
                          DistributionSpec::triangular(0.0, 0.5, 2.0)}) {
        RngStream a(99);
        RngStream b(99);
        (void)d.sample(a);
        (void)b.uniform();
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("invalid parameters are rejected") {
    RngStream s(1);
    CHECK_THROWS_AS((void)DistributionSpec::exponential(0.0).sample(s), InvalidParamsError);
    CHECK_FALSE(DistributionSpec::uniform(4.0, 2.0).violations().empty());
    CHECK_FALSE(DistributionSpec::triangular(0.0, 3.0, 2.0).violations().empty());
    CHECK_FALSE(DistributionSpec::exponential(-1.0).violations().empty());
    CHECK(DistributionSpec::uniform(2.0, 4.0).violations().empty());
}

TEST_CASE("samples stay inside the distribution support") {
    RngStream s(2024);
    const auto uni = DistributionSpec::uniform(1.0, 3.0);
    const auto tri = DistributionSpec::triangular(0.5, 1.0, 4.0);
    const auto exp = DistributionSpec::exponential(0.7);
    for (int i = 0; i < 5000; ++i) {
        const double u = uni.sample(s);
        CHECK(u >= 1.0);
        CHECK(u <= 3.0);
        const double t = tri.sample(s);
        CHECK(t >= 0.5);
        CHECK(t <= 4.0);
        CHECK(exp.sample(s) >= 0.0);
    }
}

TEST_CASE("triangular quantile is monotone in u") {
    const auto tri = DistributionSpec::triangular(0.0, 0.3, 2.0);
    double prev = -1.0;
    for (double u = 0.0; u < 1.0; u += 0.01) {
        const double q = tri.quantile(u);
        CHECK(q >= prev);
        prev = q;
    }
}
