#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "colorline/distribution.hpp"

namespace colorline {

inline constexpr std::string_view kSourceNode = "Source";
inline constexpr std::string_view kSinkNode = "Sink";

enum class PoolKind {
    Machine,
    Operator,
};

enum class ValueClass {
    ValueAdding,
    NonValueAdding,
};

// A capacity-c resource pool with its cost rates. Rates feed the busy/idle
// cost rows of the report.
struct PoolSpec {
    std::string id;
    PoolKind kind = PoolKind::Machine;
    int capacity = 1;
    double busy_rate = 0.0; // dollars per busy unit-hour
    double idle_rate = 0.0; // dollars per idle unit-hour

    bool operator==(const PoolSpec&) const = default;
};

struct StationSpec {
    std::string id;
    std::string machine_pool;
    int operators_required = 0;
    std::string operator_pool; // empty iff operators_required == 0
    DistributionSpec service;
    ValueClass value_class = ValueClass::ValueAdding;
    // When set, outbound transport starts at service start and the
    // downstream arrival happens at service_start + max(service, transport).
    bool overlap_with_outbound_transport = false;

    bool operator==(const StationSpec&) const = default;
};

struct RouteBranch {
    std::string to; // station id or "Sink"
    double probability = 1.0;
    DistributionSpec transport_time;

    bool operator==(const RouteBranch&) const = default;
};

struct RouteSpec {
    std::string from; // station id or "Source"
    std::vector<RouteBranch> branches;

    bool operator==(const RouteSpec&) const = default;
};

// Quality-control rework loop. The fail branch must also appear in the
// route table (probability equal to fail_probability), which keeps branch
// probabilities summing to 1 at the QC node; the rework edge is the only
// cycle the route graph may contain.
struct QcSpec {
    std::string station;
    double fail_probability = 0.0;
    std::string rework_target;
    std::optional<int> max_attempts; // nullopt = unbounded

    bool operator==(const QcSpec&) const = default;
};

struct SourceSpec {
    DistributionSpec interarrival;
    int batch_size = 1;

    bool operator==(const SourceSpec&) const = default;
};

// Declarative production line. Immutable after validation; safe to share
// across parallel replications.
struct LineModel {
    std::vector<StationSpec> stations;
    std::vector<PoolSpec> pools;
    std::vector<RouteSpec> routes;
    std::optional<QcSpec> qc;
    std::optional<SourceSpec> source; // absent = no arrivals
    double horizon_hours = 8.0;

    int headcount() const;

    const StationSpec* find_station(std::string_view id) const;
    const PoolSpec* find_pool(std::string_view id) const;
    const RouteSpec* find_route_from(std::string_view from) const;

    int station_index(std::string_view id) const; // -1 when missing
    int pool_index(std::string_view id) const;    // -1 when missing

    bool operator==(const LineModel&) const = default;
};

// Checks every structural invariant and returns all violations (empty when
// the model is valid).
std::vector<std::string> validate(const LineModel& model);

// Throws SchemaError listing every violation when the model is invalid.
void ensure_valid(const LineModel& model);

// FNV-1a hash over the canonical serialized form plus the horizon; used to
// detect result sets that mix models.
std::uint64_t model_fingerprint(const LineModel& model);

const char* to_string(PoolKind kind);
const char* to_string(ValueClass vc);

} // namespace colorline
