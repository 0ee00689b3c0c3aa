#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colorline/model.hpp"
#include "colorline/result.hpp"

namespace colorline {

struct BottleneckEntry {
    std::string station;
    double score = 0.0;       // composite score = machine-pool utilization
    double utilization = 0.0;
    double mean_queue_wait = 0.0;
};

struct BottleneckRanking {
    std::vector<BottleneckEntry> entries; // rank 1 first
    std::string rule;
};

// Ranks stations by machine-pool utilization; ties break by mean queue
// wait, then station declaration order. Rank 1 is the detected bottleneck.
BottleneckRanking detect_bottleneck(const SummaryReport& summary, const LineModel& model);

struct AroundProfile {
    std::string station;
    std::vector<std::string> upstream;
    std::vector<std::string> downstream;
    double upstream_mean = 0.0;
    double downstream_mean = 0.0;
    bool verdict = false;           // upstream_mean > downstream_mean
    bool upstream_is_source = false;   // no upstream stations: mean fixed at 1
    bool downstream_is_sink = false;   // no downstream stations: mean fixed at 0
};

// Mean machine utilization of the stations before and after `station`
// along the pass-edge route graph.
AroundProfile profile_around(const SummaryReport& summary, const LineModel& model,
                             std::string_view station);

struct DiffEntry {
    std::string metric;
    std::string unit;
    double base = 0.0;
    double alt = 0.0;
    double delta = 0.0;
    std::optional<double> percent; // empty when base == 0 ("n/a")
};

struct PairEntry {
    std::string id;
    double base = 0.0;
    double alt = 0.0;
};

struct DiffReport {
    std::string base_label;
    std::string alt_label;
    std::vector<DiffEntry> metrics;
    std::vector<PairEntry> operator_utilization; // operator pools only
    std::vector<PairEntry> queue_waits;          // per-queue mean waits
};

// Full metric diff of two summary reports (same schema required).
DiffReport compare_scenarios(const SummaryReport& base, const SummaryReport& alt,
                             std::string_view base_label = "current",
                             std::string_view alt_label = "developed");

} // namespace colorline
