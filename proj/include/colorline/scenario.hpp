#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "colorline/model.hpp"

namespace colorline {

// Model transformations. Each yields a new validated model; the input is
// never modified.
struct AddParallelMachine {
    std::string station;
    int machines = 1;
    int operators = 0; // added to the station's operator pool
};

struct MoveOperators {
    std::string from_pool;
    std::string to_pool;
    int count = 1;
};

struct OverlapWithTransport {
    std::string station;
    bool enabled = true;
};

struct SetTransportTime {
    std::string from;
    std::string to;
    DistributionSpec transport;
};

struct SetOperatorCount {
    std::string pool;
    int count = 0;
};

using Intervention = std::variant<AddParallelMachine, MoveOperators, OverlapWithTransport,
                                  SetTransportTime, SetOperatorCount>;

struct Scenario {
    std::string label = "scenario";
    // Interventions that add operators must net out to zero headcount
    // change unless this is set.
    bool allow_headcount_change = false;
    std::vector<Intervention> interventions;
};

// Applies one intervention. Throws UnknownTargetError when the referenced
// station/pool/route is missing and SchemaError when the result is invalid.
LineModel apply_intervention(const LineModel& model, const Intervention& intervention);

// Applies the interventions in order and enforces headcount conservation
// (HeadcountViolationError) unless the scenario declares the change.
LineModel apply_scenario(const LineModel& base, const Scenario& scenario);

Scenario parse_scenario(const std::string& json_text);
Scenario parse_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& scenario);

// The developed line: a third permil machine at color production crewed by
// an operator moved from packaging (count picked by a small deterministic
// cost-per-unit search), plus service/transport overlap at both mixing
// stations. Net headcount change is zero.
Scenario build_developed_scenario(const LineModel& fixture, std::optional<int> moved_operators =
                                                                std::nullopt,
                                  int replications = 20, std::uint64_t seed = 1);

} // namespace colorline
