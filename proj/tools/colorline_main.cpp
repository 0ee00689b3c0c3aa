// Command-line front end: parse -> simulate -> aggregate -> analyze ->
// report, with deterministic seeding and CSV emission.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "colorline/analysis.hpp"
#include "colorline/calibrate.hpp"
#include "colorline/errors.hpp"
#include "colorline/fixture.hpp"
#include "colorline/model_json.hpp"
#include "colorline/optimize.hpp"
#include "colorline/report_io.hpp"
#include "colorline/runner.hpp"
#include "colorline/scenario.hpp"

namespace fs = std::filesystem;
using namespace colorline;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
    std::string config;
    std::string scenario;
    int reps = 50;
    double horizon = 0.0; // 0 = use the model's horizon
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string format = "table";
};

std::optional<double> horizon_of(const CommonArgs& args) {
    if (args.horizon > 0.0) return args.horizon;
    return std::nullopt;
}

void add_common_flags(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* config = cmd->add_option("--config", args.config, "line configuration JSON file");
    if (config_required) config->required();
    cmd->add_option("--reps", args.reps, "replications to run")->check(CLI::PositiveNumber);
    cmd->add_option("--horizon-hours", args.horizon, "shift length override, hours")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args.seed, "base seed; all randomness flows from it");
    cmd->add_option("--out-dir", args.out_dir, "directory for report files");
    cmd->add_option("--format", args.format, "stdout format")
        ->check(CLI::IsMember({"table", "csv"}));
}

// Everything that can reject the run happens before this; exit code 2
// never leaves files behind.
std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw SimError("cannot write " + (dir / name).string());
    return out;
}

LineModel load_model(const CommonArgs& args) {
    LineModel model = parse_config_file(args.config);
    if (!args.scenario.empty()) {
        model = apply_scenario(model, parse_scenario_file(args.scenario));
    }
    return model;
}

SummaryReport simulate_report(const LineModel& model, const CommonArgs& args) {
    const auto results = run_replications(model, args.reps, args.seed, horizon_of(args));
    return aggregate_replications(results);
}

int cmd_simulate(const CommonArgs& args) {
    const LineModel model = load_model(args);
    const SummaryReport report = simulate_report(model, args);

    const fs::path dir(args.out_dir);
    {
        auto out = open_out(dir, "summary.csv");
        write_summary_csv(report, out);
    }
    {
        auto out = open_out(dir, "queues.csv");
        write_queues_csv(report, out);
    }
    {
        auto out = open_out(dir, "pools.csv");
        write_pools_csv(report, out);
    }
    if (args.format == "csv") {
        write_summary_csv(report, std::cout);
    } else {
        print_summary_table(report, std::cout);
    }
    return kExitOk;
}

int cmd_compare(const CommonArgs& args) {
    if (args.scenario.empty()) {
        std::cerr << "compare requires --scenario\n";
        return kExitUsage;
    }
    const LineModel base = parse_config_file(args.config);
    const Scenario scenario = parse_scenario_file(args.scenario);
    const LineModel alt = apply_scenario(base, scenario);

    // Same seed on both sides: common random numbers.
    const SummaryReport base_report = simulate_report(base, args);
    const SummaryReport alt_report = simulate_report(alt, args);
    const DiffReport diff = compare_scenarios(base_report, alt_report, "current",
                                              scenario.label.empty() ? "developed"
                                                                     : scenario.label);

    const fs::path dir(args.out_dir);
    {
        auto out = open_out(dir, "diff.csv");
        write_diff_csv(diff, out);
    }
    {
        auto out = open_out(dir, "fig3_unit_cost.csv");
        write_fig3_csv(diff, out);
    }
    {
        auto out = open_out(dir, "fig4_operator_utilization.csv");
        write_fig4_csv(diff, out);
    }
    {
        auto out = open_out(dir, "fig5_queue_waits.csv");
        write_fig5_csv(diff, out);
    }
    print_diff_table(diff, std::cout);
    return kExitOk;
}

int cmd_bottleneck(const CommonArgs& args) {
    const LineModel model = load_model(args);
    const SummaryReport report = simulate_report(model, args);
    const BottleneckRanking ranking = detect_bottleneck(report, model);
    const AroundProfile profile = profile_around(report, model, ranking.entries.front().station);

    const fs::path dir(args.out_dir);
    {
        auto out = open_out(dir, "bottleneck.csv");
        out << "rank,station,utilization,mean_queue_wait_h\n";
        int rank = 1;
        for (const auto& e : ranking.entries) {
            out << rank++ << ',' << e.station << ',' << format_number(e.utilization) << ','
                << format_number(e.mean_queue_wait) << '\n';
        }
    }

    std::cout << "Bottleneck ranking (" << ranking.rule << ")\n";
    int rank = 1;
    for (const auto& e : ranking.entries) {
        std::cout << "  " << rank++ << ". " << e.station << "  utilization "
                  << format_number(e.utilization) << "  mean wait "
                  << format_number(e.mean_queue_wait) << " h\n";
    }
    std::cout << "Profile around " << profile.station << ": upstream mean "
              << format_number(profile.upstream_mean)
              << (profile.upstream_is_source ? " (source)" : "") << ", downstream mean "
              << format_number(profile.downstream_mean)
              << (profile.downstream_is_sink ? " (sink)" : "") << " -> upstream "
              << (profile.verdict ? "higher" : "not higher") << '\n';
    return kExitOk;
}

int cmd_optimize(const CommonArgs& args, int total, const std::string& objective_name) {
    const auto objective = objective_from_string(objective_name);
    if (!objective) {
        std::cerr << "unknown objective '" << objective_name << "'\n";
        return kExitUsage;
    }
    const LineModel model = load_model(args);
    OptimizeOptions options;
    options.replications = args.reps;
    options.seed = args.seed;
    options.horizon = horizon_of(args);
    const OptimizeResult result = optimize_operators(model, total, *objective, options);

    const fs::path dir(args.out_dir);
    {
        nlohmann::ordered_json j;
        j["objective"] = to_string(result.objective);
        j["objective_value"] = result.objective_value;
        j["exhaustive"] = result.exhaustive;
        j["total"] = total;
        nlohmann::ordered_json alloc;
        for (std::size_t i = 0; i < result.pool_ids.size(); ++i) {
            alloc[result.pool_ids[i]] = result.best_allocation[i];
        }
        j["allocation"] = alloc;
        auto out = open_out(dir, "allocation.json");
        out << j.dump(2) << '\n';
    }
    {
        auto out = open_out(dir, "optimize_trace.csv");
        out << "evaluation";
        for (const auto& id : result.pool_ids) out << ',' << id;
        out << ",objective\n";
        int i = 1;
        for (const auto& c : result.trace) {
            out << i++;
            for (int a : c.allocation) out << ',' << a;
            out << ',' << format_number(c.objective_value) << '\n';
        }
    }

    std::cout << "Best allocation (" << to_string(result.objective) << " = "
              << format_number(result.objective_value)
              << (result.exhaustive ? ", exhaustive" : ", greedy") << "):\n";
    for (std::size_t i = 0; i < result.pool_ids.size(); ++i) {
        std::cout << "  " << result.pool_ids[i] << ": " << result.best_allocation[i] << '\n';
    }
    return kExitOk;
}

void write_calibration_json(const fs::path& dir, const CalibrationResult& result) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json params;
    for (const auto& p : result.parameters) params[p.path] = p.value;
    j["parameters"] = params;
    j["objective"] = result.objective;
    j["evaluations"] = result.evaluations;
    j["all_within_tolerance"] = result.all_within_tolerance;
    j["residuals"] = nlohmann::ordered_json::array();
    for (const auto& r : result.residuals) {
        nlohmann::ordered_json rj;
        rj["metric"] = r.metric;
        rj["target"] = r.target;
        rj["tolerance"] = r.tolerance;
        rj["achieved"] = r.achieved;
        rj["residual"] = r.residual;
        rj["within_tolerance"] = r.within_tolerance;
        j["residuals"].push_back(rj);
    }
    auto out = open_out(dir, "calibration.json");
    out << j.dump(2) << '\n';
}

void print_residuals(const CalibrationResult& result) {
    std::cout << "Calibration after " << result.evaluations << " evaluation(s), objective "
              << format_number(result.objective) << '\n';
    for (const auto& p : result.parameters) {
        std::cout << "  " << p.path << " = " << format_number(p.value) << '\n';
    }
    for (const auto& r : result.residuals) {
        std::cout << "  " << (r.within_tolerance ? "[ok]  " : "[off] ") << r.metric
                  << " target " << format_number(r.target) << " achieved "
                  << format_number(r.achieved) << " (tolerance " << format_number(r.tolerance)
                  << ")\n";
    }
}

int cmd_calibrate(const CommonArgs& args, const std::string& targets_path, int budget) {
    const LineModel model = load_model(args);

    std::ifstream in(targets_path, std::ios::binary);
    if (!in) throw ParseError("cannot open targets file '" + targets_path + "'");
    nlohmann::json tj;
    try {
        tj = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("targets file is not valid JSON: ") + e.what());
    }
    std::vector<CalibrationTarget> targets;
    std::vector<FreeParameter> parameters;
    try {
        for (const auto& t : tj.at("targets")) {
            targets.push_back({t.at("metric").get<std::string>(), t.at("target").get<double>(),
                               t.at("tolerance").get<double>()});
        }
        for (const auto& p : tj.at("parameters")) {
            parameters.push_back({p.at("path").get<std::string>(), p.at("lo").get<double>(),
                                  p.at("hi").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("targets schema error: ") + e.what());
    }

    CalibrateOptions options;
    options.replications = args.reps;
    options.seed = args.seed;
    options.horizon = horizon_of(args);

    const fs::path dir(args.out_dir);
    try {
        const CalibrationResult result = calibrate(model, parameters, targets, budget, options);
        write_calibration_json(dir, result);
        print_residuals(result);
        return kExitOk;
    } catch (const BudgetExhaustedError& e) {
        // Budget ran out: persist the best-so-far and report failure.
        write_calibration_json(dir, e.best);
        print_residuals(e.best);
        std::cerr << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_export_fixture(const std::string& out_dir) {
    const std::string text = serialize_model(build_paper_line());
    if (out_dir.empty()) {
        std::cout << text;
    } else {
        auto out = open_out(out_dir, "paper_line.json");
        out << text;
        std::cout << (fs::path(out_dir) / "paper_line.json").string() << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event simulation of a color production line: metrics, "
                 "bottlenecks, improvement scenarios, operator allocation and calibration"};
    app.require_subcommand(1);

    CommonArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "run replications and write report CSVs");
    add_common_flags(simulate, sim_args);
    simulate->add_option("--scenario", sim_args.scenario, "apply a scenario file first");

    CommonArgs cmp_args;
    auto* compare =
        app.add_subcommand("compare", "run base and scenario with common random numbers");
    add_common_flags(compare, cmp_args);
    compare->add_option("--scenario", cmp_args.scenario, "scenario JSON file")->required();

    CommonArgs bn_args;
    auto* bottleneck = app.add_subcommand("bottleneck", "rank stations by utilization");
    add_common_flags(bottleneck, bn_args);
    bottleneck->add_option("--scenario", bn_args.scenario, "apply a scenario file first");

    CommonArgs opt_args;
    opt_args.reps = 20;
    int opt_total = 0;
    std::string opt_objective = "min_cost_per_unit";
    auto* optimize = app.add_subcommand("optimize", "search operator allocations");
    add_common_flags(optimize, opt_args);
    optimize->add_option("--scenario", opt_args.scenario, "apply a scenario file first");
    optimize->add_option("--total", opt_total, "total operator headcount to allocate")
        ->required()
        ->check(CLI::PositiveNumber);
    optimize->add_option("--objective", opt_objective, "max_throughput or min_cost_per_unit")
        ->check(CLI::IsMember({"max_throughput", "min_cost_per_unit"}));

    CommonArgs cal_args;
    std::string cal_targets;
    int cal_budget = 400;
    auto* calibrate_cmd =
        app.add_subcommand("calibrate", "fit free model parameters to report targets");
    add_common_flags(calibrate_cmd, cal_args);
    calibrate_cmd->add_option("--targets", cal_targets, "targets + parameters JSON file")
        ->required();
    calibrate_cmd->add_option("--budget", cal_budget, "evaluation budget")
        ->check(CLI::PositiveNumber);

    std::string export_dir;
    auto* export_fixture =
        app.add_subcommand("export-fixture", "write the built-in color line configuration");
    export_fixture->add_option("--out-dir", export_dir,
                               "target directory (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim_args);
        if (compare->parsed()) return cmd_compare(cmp_args);
        if (bottleneck->parsed()) return cmd_bottleneck(bn_args);
        if (optimize->parsed()) return cmd_optimize(opt_args, opt_total, opt_objective);
        if (calibrate_cmd->parsed()) return cmd_calibrate(cal_args, cal_targets, cal_budget);
        if (export_fixture->parsed()) return cmd_export_fixture(export_dir);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnknownTargetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const HeadcountViolationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleTotalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleBoundsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SimError& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
