#include <doctest.h>

#include <random>
#include <string>

#include "colorline/errors.hpp"
#include "colorline/fixture.hpp"
#include "colorline/model_json.hpp"
#include "model_builders.hpp"

using namespace colorline;
namespace tb = colorline::testing;

namespace {

const char* kMinimalConfig = R"({
  "source": {"interarrival": {"family": "exponential", "mean": 1.0}},
  "pools": [{"id": "m1", "kind": "machine", "capacity": 1}],
  "stations": [{"id": "s1", "machine_pool": "m1",
                "service": {"family": "constant", "value": 0.5}}],
  "routes": [
    {"from": "Source", "branches": [{"to": "s1"}]},
    {"from": "s1", "branches": [{"to": "Sink"}]}
  ]
})";

} // namespace

TEST_CASE("minimal config parses with defaults applied") {
    const LineModel m = parse_config(kMinimalConfig);
    CHECK(m.horizon_hours == 8.0);
    REQUIRE(m.stations.size() == 1);
    CHECK(m.stations[0].value_class == ValueClass::ValueAdding);
    CHECK_FALSE(m.stations[0].overlap_with_outbound_transport);
    CHECK(m.stations[0].operators_required == 0);
    REQUIRE(m.source.has_value());
    CHECK(m.source->batch_size == 1);
    REQUIRE(m.routes.size() == 2);
    CHECK(m.routes[0].branches[0].probability == 1.0);
    CHECK(m.routes[0].branches[0].transport_time == DistributionSpec::constant(0.0));
}

TEST_CASE("unknown station reference is a schema error naming the field") {
    std::string text = kMinimalConfig;
    const auto pos = text.find("\"to\": \"s1\"");
    text.replace(pos, 10, "\"to\": \"mixr\"");
    try {
        (void)parse_config(text);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("mixr") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected in strict mode") {
    std::string text = kMinimalConfig;
    text.insert(1, "\n  \"horzon_hours\": 8,");
    try {
        (void)parse_config(text);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("horzon_hours") != std::string::npos);
    }
}

TEST_CASE("malformed JSON reports the line") {
    try {
        (void)parse_config("{\n  \"stations\": [\n  broken\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("schema errors are collected in one pass") {
    // Two independent violations: an unknown key and a bad pool reference.
    std::string text = R"({
      "bogus_key": 1,
      "pools": [{"id": "m1", "kind": "machine", "capacity": 1}],
      "stations": [{"id": "s1", "machine_pool": "nope",
                    "service": {"family": "constant", "value": 0.5}}],
      "routes": [
        {"from": "Source", "branches": [{"to": "s1"}]},
        {"from": "s1", "branches": [{"to": "Sink"}]}
      ]
    })";
    try {
        (void)parse_config(text);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        const std::string what = e.what();
        CHECK(what.find("bogus_key") != std::string::npos);
        CHECK(what.find("nope") != std::string::npos);
    }
}

TEST_CASE("validate reports branch probabilities that do not sum to one") {
    LineModel m = tb::single_station(DistributionSpec::exponential(1.0),
                                     DistributionSpec::exponential(0.5));
    m.routes[1].branches[0].probability = 0.6;
    m.routes[1].branches.push_back({"s1", 0.3, DistributionSpec::constant(0.0)});
    const auto violations = validate(m);
    bool found = false;
    for (const auto& v : violations) {
        if (v.find("probabilities sum to 0.9") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("validate rejects a certain-fail QC") {
    LineModel m = tb::tandem(DistributionSpec::exponential(1.0),
                             DistributionSpec::exponential(0.3),
                             DistributionSpec::exponential(0.3));
    QcSpec qc;
    qc.station = "s2";
    qc.fail_probability = 1.0;
    qc.rework_target = "s1";
    m.qc = qc;
    m.routes[2] = RouteSpec{"s2",
                            {{"s1", 1.0, DistributionSpec::constant(0.0)},
                             {std::string(kSinkNode), 0.0, DistributionSpec::constant(0.0)}}};
    const auto violations = validate(m);
    bool found = false;
    for (const auto& v : violations) {
        if (v.find("fail_probability") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("validate rejects cycles outside the rework loop") {
    LineModel m = tb::tandem(DistributionSpec::exponential(1.0),
                             DistributionSpec::exponential(0.3),
                             DistributionSpec::exponential(0.3));
    // s2 routes back to s1 with no QC declaration.
    m.routes[2] = RouteSpec{"s2",
                            {{"s1", 0.5, DistributionSpec::constant(0.0)},
                             {std::string(kSinkNode), 0.5, DistributionSpec::constant(0.0)}}};
    const auto violations = validate(m);
    bool found = false;
    for (const auto& v : violations) {
        if (v.find("cycle") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("validate rejects overlap on the QC station") {
    LineModel m = tb::tandem(DistributionSpec::exponential(1.0),
                             DistributionSpec::exponential(0.3),
                             DistributionSpec::exponential(0.3));
    QcSpec qc;
    qc.station = "s2";
    qc.fail_probability = 0.1;
    qc.rework_target = "s1";
    m.qc = qc;
    m.routes[2] = RouteSpec{"s2",
                            {{"s1", 0.1, DistributionSpec::constant(0.0)},
                             {std::string(kSinkNode), 0.9, DistributionSpec::constant(0.0)}}};
    CHECK(validate(m).empty());
    m.stations[1].overlap_with_outbound_transport = true;
    CHECK_FALSE(validate(m).empty());
}

TEST_CASE("operators_required above pool capacity is a violation") {
    LineModel m = tb::tandem(DistributionSpec::exponential(1.0),
                             DistributionSpec::exponential(0.3),
                             DistributionSpec::exponential(0.3));
    m.stations[0].operators_required = 3; // pool o1 has capacity 1
    CHECK_FALSE(validate(m).empty());
}

TEST_CASE("the paper fixture validates cleanly") {
    const LineModel m = build_paper_line();
    CHECK(validate(m).empty());
}

TEST_CASE("fixture structure follows the line narrative") {
    const LineModel m = build_paper_line();
    using namespace fixture_ids;

    // Station order along the line.
    const std::vector<std::string> expected{kResin,    kPaste,    kColor,
                                            kSolvent,  kQc,       kWeighing,
                                            kPackAuto, kPackManualA, kPackManualB};
    REQUIRE(m.stations.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(m.stations[i].id == expected[i]);
    }

    // The color production station runs two permil machines.
    const PoolSpec* permil = m.find_pool(kPermilMachines);
    REQUIRE(permil != nullptr);
    CHECK(permil->capacity == 2);

    // QC rework loops back to the solvent mixer.
    REQUIRE(m.qc.has_value());
    CHECK(m.qc->station == kQc);
    CHECK(m.qc->rework_target == kSolvent);

    // Packaging: three branches after weighing, exactly one fully automatic.
    const RouteSpec* weigh = m.find_route_from(kWeighing);
    REQUIRE(weigh != nullptr);
    CHECK(weigh->branches.size() == 3);
    int automatic = 0;
    for (const auto& b : weigh->branches) {
        const StationSpec* st = m.find_station(b.to);
        REQUIRE(st != nullptr);
        if (st->operators_required == 0) ++automatic;
    }
    CHECK(automatic == 1);

    // Headcount is the sum of the operator pools.
    int total = 0;
    for (const auto& p : m.pools) {
        if (p.kind == PoolKind::Operator) total += p.capacity;
    }
    CHECK(m.headcount() == total);
}

TEST_CASE("serialize then parse is the identity") {
    const LineModel fixture = build_paper_line();
    CHECK(parse_config(serialize_model(fixture)) == fixture);

    // And across randomized single/tandem variants.
    std::mt19937 gen(23);
    std::uniform_real_distribution<double> mean(0.05, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        LineModel m = tb::tandem(DistributionSpec::exponential(mean(gen)),
                                 DistributionSpec::uniform(0.1, 0.1 + mean(gen)),
                                 DistributionSpec::triangular(0.0, mean(gen), 3.0),
                                 1 + static_cast<int>(gen() % 3), 1 + static_cast<int>(gen() % 3),
                                 1 + static_cast<int>(gen() % 2), 1 + static_cast<int>(gen() % 2));
        m.horizon_hours = 1.0 + mean(gen);
        REQUIRE(validate(m).empty());
        CHECK(parse_config(serialize_model(m)) == m);
    }
}

TEST_CASE("fingerprints distinguish models") {
    const LineModel a = build_paper_line();
    FixtureParams params;
    params.color_service *= 1.5;
    const LineModel b = build_paper_line(params);
    CHECK(model_fingerprint(a) != model_fingerprint(b));
    CHECK(model_fingerprint(a) == model_fingerprint(build_paper_line()));
}
