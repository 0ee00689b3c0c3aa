#include "colorline/model_json.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "colorline/errors.hpp"
#include "colorline/rng.hpp"

namespace colorline {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Collects schema violations so a single SchemaError can report all of them.
struct Issues {
    std::vector<std::string> items;

    void add(const std::string& path, const std::string& what) {
        items.push_back(path + ": " + what);
    }

    void raise_if_any() const {
        if (items.empty()) return;
        std::ostringstream oss;
        oss << "configuration schema errors (" << items.size() << "):";
        for (const auto& it : items) oss << "\n  - " << it;
        throw SchemaError(oss.str());
    }
};

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed, Issues& issues) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) issues.add(path + "." + it.key(), "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const char* key, Issues& issues,
                  bool required, double fallback) {
    if (!obj.contains(key)) {
        if (required) issues.add(path + "." + key, "missing required number");
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        issues.add(path + "." + key, "expected a number");
        return fallback;
    }
    return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, Issues& issues,
            bool required, int fallback) {
    if (!obj.contains(key)) {
        if (required) issues.add(path + "." + key, "missing required integer");
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
        issues.add(path + "." + key, "expected an integer");
        return fallback;
    }
    return v.get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key, Issues& issues,
                       bool required, const std::string& fallback = {}) {
    if (!obj.contains(key)) {
        if (required) issues.add(path + "." + key, "missing required string");
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        issues.add(path + "." + key, "expected a string");
        return fallback;
    }
    return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, Issues& issues,
              bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) {
        issues.add(path + "." + key, "expected a boolean");
        return fallback;
    }
    return v.get<bool>();
}

DistributionSpec parse_dist(const json& obj, const std::string& path, Issues& issues) {
    DistributionSpec d = DistributionSpec::constant(0.0);
    if (!obj.is_object()) {
        issues.add(path, "expected a distribution object");
        return d;
    }
    check_keys(obj, path, {"family", "value", "mean", "lo", "hi", "mode"}, issues);
    const std::string family = get_string(obj, path, "family", issues, true);
    if (family == "constant") {
        d = DistributionSpec::constant(get_number(obj, path, "value", issues, true, 0.0));
    } else if (family == "exponential") {
        d = DistributionSpec::exponential(get_number(obj, path, "mean", issues, true, 1.0));
    } else if (family == "uniform") {
        d = DistributionSpec::uniform(get_number(obj, path, "lo", issues, true, 0.0),
                                      get_number(obj, path, "hi", issues, true, 0.0));
    } else if (family == "triangular") {
        d = DistributionSpec::triangular(get_number(obj, path, "lo", issues, true, 0.0),
                                         get_number(obj, path, "mode", issues, true, 0.0),
                                         get_number(obj, path, "hi", issues, true, 0.0));
    } else if (!family.empty()) {
        issues.add(path + ".family", "unknown distribution family '" + family + "'");
    }
    return d;
}

ordered_json dist_to_json(const DistributionSpec& d) {
    ordered_json j;
    j["family"] = to_string(d.family);
    switch (d.family) {
    case DistFamily::Constant:
        j["value"] = d.value;
        break;
    case DistFamily::Exponential:
        j["mean"] = d.mean;
        break;
    case DistFamily::Uniform:
        j["lo"] = d.lo;
        j["hi"] = d.hi;
        break;
    case DistFamily::Triangular:
        j["lo"] = d.lo;
        j["mode"] = d.mode;
        j["hi"] = d.hi;
        break;
    }
    return j;
}

} // namespace

LineModel parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line number for the message.
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line;
        }
        throw ParseError("config is not valid JSON (line " + std::to_string(line) +
                         "): " + e.what());
    }

    Issues issues;
    if (!root.is_object()) {
        throw SchemaError("configuration root must be a JSON object");
    }
    check_keys(root, "$",
               {"stations", "pools", "routes", "qc", "source", "horizon_hours", "cost_rates"},
               issues);

    LineModel model;
    model.horizon_hours = get_number(root, "$", "horizon_hours", issues, false, 8.0);

    if (root.contains("source") && !root.at("source").is_null()) {
        const auto& src = root.at("source");
        const std::string path = "$.source";
        if (!src.is_object()) {
            issues.add(path, "expected an object");
        } else {
            check_keys(src, path, {"interarrival", "batch_size"}, issues);
            SourceSpec s;
            if (src.contains("interarrival")) {
                s.interarrival = parse_dist(src.at("interarrival"), path + ".interarrival", issues);
            } else {
                issues.add(path + ".interarrival", "missing required distribution");
            }
            s.batch_size = get_int(src, path, "batch_size", issues, false, 1);
            model.source = s;
        }
    }

    if (!root.contains("pools") || !root.at("pools").is_array()) {
        issues.add("$.pools", "missing required array");
    } else {
        int i = 0;
        for (const auto& pj : root.at("pools")) {
            const std::string path = "$.pools[" + std::to_string(i++) + "]";
            if (!pj.is_object()) {
                issues.add(path, "expected an object");
                continue;
            }
            check_keys(pj, path, {"id", "kind", "capacity"}, issues);
            PoolSpec p;
            p.id = get_string(pj, path, "id", issues, true);
            const std::string kind = get_string(pj, path, "kind", issues, true, "machine");
            if (kind == "machine") {
                p.kind = PoolKind::Machine;
            } else if (kind == "operator") {
                p.kind = PoolKind::Operator;
            } else {
                issues.add(path + ".kind", "must be 'machine' or 'operator'");
            }
            p.capacity = get_int(pj, path, "capacity", issues, true, 1);
            model.pools.push_back(std::move(p));
        }
    }

    if (!root.contains("stations") || !root.at("stations").is_array()) {
        issues.add("$.stations", "missing required array");
    } else {
        int i = 0;
        for (const auto& sj : root.at("stations")) {
            const std::string path = "$.stations[" + std::to_string(i++) + "]";
            if (!sj.is_object()) {
                issues.add(path, "expected an object");
                continue;
            }
            check_keys(sj, path,
                       {"id", "machine_pool", "operators_required", "operator_pool", "service",
                        "value_class", "overlap_with_outbound_transport"},
                       issues);
            StationSpec s;
            s.id = get_string(sj, path, "id", issues, true);
            s.machine_pool = get_string(sj, path, "machine_pool", issues, true);
            s.operators_required = get_int(sj, path, "operators_required", issues, false, 0);
            s.operator_pool = get_string(sj, path, "operator_pool", issues, false);
            if (sj.contains("service")) {
                s.service = parse_dist(sj.at("service"), path + ".service", issues);
            } else {
                issues.add(path + ".service", "missing required distribution");
            }
            const std::string vc =
                get_string(sj, path, "value_class", issues, false, "value_adding");
            if (vc == "value_adding") {
                s.value_class = ValueClass::ValueAdding;
            } else if (vc == "non_value_adding") {
                s.value_class = ValueClass::NonValueAdding;
            } else {
                issues.add(path + ".value_class",
                           "must be 'value_adding' or 'non_value_adding'");
            }
            s.overlap_with_outbound_transport =
                get_bool(sj, path, "overlap_with_outbound_transport", issues, false);
            model.stations.push_back(std::move(s));
        }
    }

    if (!root.contains("routes") || !root.at("routes").is_array()) {
        issues.add("$.routes", "missing required array");
    } else {
        int i = 0;
        for (const auto& rj : root.at("routes")) {
            const std::string path = "$.routes[" + std::to_string(i++) + "]";
            if (!rj.is_object()) {
                issues.add(path, "expected an object");
                continue;
            }
            check_keys(rj, path, {"from", "branches"}, issues);
            RouteSpec r;
            r.from = get_string(rj, path, "from", issues, true);
            if (!rj.contains("branches") || !rj.at("branches").is_array()) {
                issues.add(path + ".branches", "missing required array");
            } else {
                int k = 0;
                for (const auto& bj : rj.at("branches")) {
                    const std::string bpath = path + ".branches[" + std::to_string(k++) + "]";
                    if (!bj.is_object()) {
                        issues.add(bpath, "expected an object");
                        continue;
                    }
                    check_keys(bj, bpath, {"to", "probability", "transport_time"}, issues);
                    RouteBranch b;
                    b.to = get_string(bj, bpath, "to", issues, true);
                    b.probability = get_number(bj, bpath, "probability", issues, false, 1.0);
                    if (bj.contains("transport_time")) {
                        b.transport_time =
                            parse_dist(bj.at("transport_time"), bpath + ".transport_time", issues);
                    } else {
                        b.transport_time = DistributionSpec::constant(0.0);
                    }
                    r.branches.push_back(std::move(b));
                }
            }
            model.routes.push_back(std::move(r));
        }
    }

    if (root.contains("qc") && !root.at("qc").is_null()) {
        const auto& qj = root.at("qc");
        const std::string path = "$.qc";
        if (!qj.is_object()) {
            issues.add(path, "expected an object");
        } else {
            check_keys(qj, path, {"station", "fail_probability", "rework_target", "max_attempts"},
                       issues);
            QcSpec q;
            q.station = get_string(qj, path, "station", issues, true);
            q.fail_probability = get_number(qj, path, "fail_probability", issues, true, 0.0);
            q.rework_target = get_string(qj, path, "rework_target", issues, true);
            if (qj.contains("max_attempts") && !qj.at("max_attempts").is_null()) {
                q.max_attempts = get_int(qj, path, "max_attempts", issues, false, 1);
            }
            model.qc = q;
        }
    }

    if (root.contains("cost_rates")) {
        const auto& cj = root.at("cost_rates");
        if (!cj.is_object()) {
            issues.add("$.cost_rates", "expected an object keyed by pool id");
        } else {
            for (auto it = cj.begin(); it != cj.end(); ++it) {
                const std::string path = "$.cost_rates." + it.key();
                bool found = false;
                for (auto& p : model.pools) {
                    if (p.id == it.key()) {
                        found = true;
                        if (!it.value().is_object()) {
                            issues.add(path, "expected an object");
                            break;
                        }
                        check_keys(it.value(), path, {"busy_rate", "idle_rate"}, issues);
                        p.busy_rate = get_number(it.value(), path, "busy_rate", issues, false, 0.0);
                        p.idle_rate = get_number(it.value(), path, "idle_rate", issues, false, 0.0);
                        break;
                    }
                }
                if (!found) issues.add(path, "rates for unknown pool");
            }
        }
    }

    // Structural invariants are part of the same one-pass report.
    for (const auto& v : validate(model)) {
        issues.add("$", v);
    }
    issues.raise_if_any();
    return model;
}

LineModel parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_model(const LineModel& model) {
    ordered_json root;
    root["horizon_hours"] = model.horizon_hours;
    if (model.source) {
        ordered_json s;
        s["interarrival"] = dist_to_json(model.source->interarrival);
        s["batch_size"] = model.source->batch_size;
        root["source"] = s;
    }
    root["pools"] = ordered_json::array();
    for (const auto& p : model.pools) {
        ordered_json pj;
        pj["id"] = p.id;
        pj["kind"] = to_string(p.kind);
        pj["capacity"] = p.capacity;
        root["pools"].push_back(pj);
    }
    root["stations"] = ordered_json::array();
    for (const auto& s : model.stations) {
        ordered_json sj;
        sj["id"] = s.id;
        sj["machine_pool"] = s.machine_pool;
        sj["operators_required"] = s.operators_required;
        if (!s.operator_pool.empty()) sj["operator_pool"] = s.operator_pool;
        sj["service"] = dist_to_json(s.service);
        sj["value_class"] = to_string(s.value_class);
        sj["overlap_with_outbound_transport"] = s.overlap_with_outbound_transport;
        root["stations"].push_back(sj);
    }
    root["routes"] = ordered_json::array();
    for (const auto& r : model.routes) {
        ordered_json rj;
        rj["from"] = r.from;
        rj["branches"] = ordered_json::array();
        for (const auto& b : r.branches) {
            ordered_json bj;
            bj["to"] = b.to;
            bj["probability"] = b.probability;
            bj["transport_time"] = dist_to_json(b.transport_time);
            rj["branches"].push_back(bj);
        }
        root["routes"].push_back(rj);
    }
    if (model.qc) {
        ordered_json qj;
        qj["station"] = model.qc->station;
        qj["fail_probability"] = model.qc->fail_probability;
        qj["rework_target"] = model.qc->rework_target;
        if (model.qc->max_attempts) {
            qj["max_attempts"] = *model.qc->max_attempts;
        } else {
            qj["max_attempts"] = nullptr;
        }
        root["qc"] = qj;
    }
    ordered_json rates;
    for (const auto& p : model.pools) {
        ordered_json rj;
        rj["busy_rate"] = p.busy_rate;
        rj["idle_rate"] = p.idle_rate;
        rates[p.id] = rj;
    }
    root["cost_rates"] = rates;
    return root.dump(2) + "\n";
}

std::uint64_t model_fingerprint(const LineModel& model) {
    const std::string text = serialize_model(model);
    return RngStream::fnv1a64(text);
}

} // namespace colorline
