#include "colorline/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "colorline/result.hpp"
#include "colorline/rng.hpp"
#include "colorline/runner.hpp"

namespace colorline {

namespace {

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(path);
    while (std::getline(in, part, '.')) parts.push_back(part);
    return parts;
}

double* dist_field(DistributionSpec& d, const std::string& field) {
    if (field == "value") return &d.value;
    if (field == "mean") return &d.mean;
    if (field == "lo") return &d.lo;
    if (field == "hi") return &d.hi;
    if (field == "mode") return &d.mode;
    return nullptr;
}

// Resolves a parameter path inside `model`; returns null batch-size marker
// via `is_batch`.
double* resolve(LineModel& model, const std::string& path, bool& is_batch) {
    is_batch = false;
    const auto parts = split_path(path);
    if (parts.size() == 2 && parts[0] == "source" && parts[1] == "batch_size") {
        if (!model.source) throw UnknownTargetError("model has no source: " + path);
        is_batch = true;
        return nullptr;
    }
    if (parts.size() == 3 && parts[0] == "source" && parts[1] == "interarrival") {
        if (!model.source) throw UnknownTargetError("model has no source: " + path);
        if (double* f = dist_field(model.source->interarrival, parts[2])) return f;
    }
    if (parts.size() == 4 && parts[0] == "station" && parts[2] == "service") {
        for (auto& st : model.stations) {
            if (st.id != parts[1]) continue;
            if (double* f = dist_field(st.service, parts[3])) return f;
        }
    }
    if (parts.size() == 5 && parts[0] == "route" && parts[3] == "transport") {
        for (auto& r : model.routes) {
            if (r.from != parts[1]) continue;
            for (auto& b : r.branches) {
                if (b.to != parts[2]) continue;
                if (double* f = dist_field(b.transport_time, parts[4])) return f;
            }
        }
    }
    throw UnknownTargetError("unresolvable parameter path '" + path + "'");
}

} // namespace

LineModel with_parameter(const LineModel& model, const std::string& path, double value) {
    LineModel next = model;
    bool is_batch = false;
    double* field = resolve(next, path, is_batch);
    if (is_batch) {
        next.source->batch_size = std::max(1, static_cast<int>(std::lround(value)));
    } else {
        *field = value;
    }
    return next;
}

double read_parameter(const LineModel& model, const std::string& path) {
    LineModel copy = model;
    bool is_batch = false;
    double* field = resolve(copy, path, is_batch);
    if (is_batch) return static_cast<double>(copy.source->batch_size);
    return *field;
}

namespace {

struct Evaluator {
    const LineModel& base;
    const std::vector<FreeParameter>& parameters;
    const std::vector<CalibrationTarget>& targets;
    const CalibrateOptions& options;

    int evaluations = 0;
    std::map<std::vector<double>, std::pair<double, std::vector<double>>> cache;

    LineModel materialize(const std::vector<double>& x) const {
        LineModel m = base;
        for (std::size_t i = 0; i < parameters.size(); ++i) {
            m = with_parameter(m, parameters[i].path, x[i]);
        }
        return m;
    }

    // Returns (objective, achieved metric means). Same x always maps to the
    // same value: common random numbers per evaluation.
    std::pair<double, std::vector<double>> evaluate(const std::vector<double>& x) {
        auto it = cache.find(x);
        if (it != cache.end()) return it->second;
        const LineModel m = materialize(x);
        const auto results =
            run_replications(m, options.replications, options.seed, options.horizon);
        const auto report = aggregate_replications(results);
        double objective = 0.0;
        std::vector<double> achieved;
        for (const auto& t : targets) {
            const double a = report.mean_of(t.metric);
            achieved.push_back(a);
            const double denom = std::max(std::abs(t.target), 1e-12);
            const double rel = (a - t.target) / denom;
            objective += rel * rel;
        }
        ++evaluations;
        auto entry = std::make_pair(objective, std::move(achieved));
        cache.emplace(x, entry);
        return entry;
    }
};

CalibrationResult make_result(const Evaluator& ev, const std::vector<double>& x,
                              double objective, const std::vector<double>& achieved) {
    CalibrationResult out;
    for (std::size_t i = 0; i < ev.parameters.size(); ++i) {
        double v = x[i];
        if (ev.parameters[i].path == "source.batch_size") {
            v = std::max(1.0, std::round(v));
        }
        out.parameters.push_back({ev.parameters[i].path, v});
    }
    out.objective = objective;
    out.evaluations = ev.evaluations;
    out.all_within_tolerance = true;
    for (std::size_t i = 0; i < ev.targets.size(); ++i) {
        const auto& t = ev.targets[i];
        CalibrationResidual r;
        r.metric = t.metric;
        r.target = t.target;
        r.tolerance = t.tolerance;
        r.achieved = achieved[i];
        r.residual = (r.achieved - t.target) / std::max(std::abs(t.target), 1e-12);
        r.within_tolerance = std::abs(r.achieved - t.target) <= t.tolerance;
        if (!r.within_tolerance) out.all_within_tolerance = false;
        out.residuals.push_back(std::move(r));
    }
    return out;
}

} // namespace

CalibrationResult calibrate(const LineModel& model, const std::vector<FreeParameter>& parameters,
                            const std::vector<CalibrationTarget>& targets, int budget,
                            const CalibrateOptions& options) {
    if (parameters.empty()) throw InfeasibleBoundsError("no free parameters");
    if (targets.empty()) throw InfeasibleBoundsError("no calibration targets");
    for (const auto& p : parameters) {
        if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || p.lo > p.hi) {
            throw InfeasibleBoundsError("parameter '" + p.path + "' has an invalid interval");
        }
        read_parameter(model, p.path); // path must resolve
    }
    for (const auto& t : targets) {
        if (!(t.tolerance > 0.0)) {
            throw InfeasibleBoundsError("target '" + t.metric + "' needs tolerance > 0");
        }
    }

    Evaluator ev{model, parameters, targets, options, 0, {}};
    const std::size_t dims = parameters.size();

    std::vector<double> best_x;
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best_achieved;

    auto consider = [&](const std::vector<double>& x, double obj,
                        const std::vector<double>& achieved) {
        if (obj < best_obj - 1e-15) {
            best_obj = obj;
            best_x = x;
            best_achieved = achieved;
        }
    };

    RngStream jitter = RngStream::for_key(options.seed, 0, "calibrate", StreamPurpose::Routing);

    for (int start = 0; start < options.starts && ev.evaluations < budget; ++start) {
        std::vector<double> x(dims);
        std::vector<double> step(dims);
        for (std::size_t i = 0; i < dims; ++i) {
            const double lo = parameters[i].lo;
            const double hi = parameters[i].hi;
            const double mid = 0.5 * (lo + hi);
            x[i] = start == 0 ? mid : lo + jitter.uniform() * (hi - lo);
            step[i] = 0.25 * (hi - lo);
        }
        auto [obj, achieved] = ev.evaluate(x);
        consider(x, obj, achieved);

        bool active = true;
        while (active && ev.evaluations < budget) {
            bool improved_sweep = false;
            for (std::size_t i = 0; i < dims && ev.evaluations < budget; ++i) {
                if (step[i] <= 0.0) continue;
                for (double dir : {+1.0, -1.0}) {
                    if (ev.evaluations >= budget) break;
                    std::vector<double> y = x;
                    y[i] = std::clamp(y[i] + dir * step[i], parameters[i].lo, parameters[i].hi);
                    if (y[i] == x[i]) continue;
                    auto [obj_y, achieved_y] = ev.evaluate(y);
                    if (obj_y < obj - 1e-15) {
                        x = y;
                        obj = obj_y;
                        consider(x, obj, achieved_y);
                        improved_sweep = true;
                        break; // re-sweep from the improved point
                    }
                }
            }
            if (!improved_sweep) {
                double max_rel_step = 0.0;
                for (std::size_t i = 0; i < dims; ++i) {
                    step[i] *= 0.5;
                    const double range = parameters[i].hi - parameters[i].lo;
                    if (range > 0.0) max_rel_step = std::max(max_rel_step, step[i] / range);
                }
                if (max_rel_step < 1e-4) active = false; // converged for this start
            }
        }
    }

    CalibrationResult result = make_result(ev, best_x, best_obj, best_achieved);
    if (!result.all_within_tolerance) {
        throw BudgetExhaustedError(
            "calibration stopped after " + std::to_string(ev.evaluations) +
                " evaluation(s) with targets outside tolerance",
            std::move(result));
    }
    return result;
}

} // namespace colorline
