#include "colorline/report_io.hpp"

#include <cstdio>
#include <iomanip>

#include "colorline/errors.hpp"

namespace colorline {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

void write_summary_csv(const SummaryReport& report, std::ostream& out) {
    out << "metric,unit,mean,std,ci95_halfwidth\n";
    for (const auto& m : report.line) {
        out << m.name << ',' << m.unit << ',' << format_number(m.stats.mean) << ','
            << format_number(m.stats.stddev) << ',' << format_number(m.stats.ci95_halfwidth)
            << '\n';
    }
}

void write_queues_csv(const SummaryReport& report, std::ostream& out) {
    out << "station,mean_time_weighted_length,mean_wait_h,max_wait_h\n";
    for (const auto& q : report.queues) {
        out << q.station << ',' << format_number(q.length.mean) << ','
            << format_number(q.wait.mean) << ',' << format_number(q.max_wait.mean) << '\n';
    }
}

void write_pools_csv(const SummaryReport& report, std::ostream& out) {
    out << "pool,kind,capacity,busy_hours,idle_hours,utilization\n";
    for (const auto& p : report.pools) {
        out << p.pool << ',' << to_string(p.kind) << ',' << p.capacity << ','
            << format_number(p.busy_hours.mean) << ',' << format_number(p.idle_hours.mean) << ','
            << format_number(p.utilization.mean) << '\n';
    }
}

void print_summary_table(const SummaryReport& report, std::ostream& out) {
    out << "Results over " << report.replications << " replication(s), horizon "
        << format_number(report.horizon) << " h\n";
    out << std::left << std::setw(42) << "Items" << std::right << std::setw(12) << "Quantity"
        << std::setw(10) << "Unit" << std::setw(14) << "CI95 +/-" << '\n';
    for (const auto& m : report.line) {
        std::string label = m.name;
        for (auto& c : label) {
            if (c == '_') c = ' ';
        }
        char quantity[64];
        if (m.name == "average_resource_utilization") {
            std::snprintf(quantity, sizeof(quantity), "%.2f%%", 100.0 * m.stats.mean);
        } else {
            std::snprintf(quantity, sizeof(quantity), "%.2f", m.stats.mean);
        }
        char hw[64];
        std::snprintf(hw, sizeof(hw), "%.3f", m.stats.ci95_halfwidth);
        out << std::left << std::setw(42) << label << std::right << std::setw(12) << quantity
            << std::setw(10) << m.unit << std::setw(14) << hw << '\n';
    }
}

void write_diff_csv(const DiffReport& diff, std::ostream& out) {
    out << "metric,unit," << diff.base_label << ',' << diff.alt_label << ",delta,percent\n";
    for (const auto& e : diff.metrics) {
        out << e.metric << ',' << e.unit << ',' << format_number(e.base) << ','
            << format_number(e.alt) << ',' << format_number(e.delta) << ',';
        if (e.percent) {
            out << format_number(*e.percent);
        } else {
            out << "n/a";
        }
        out << '\n';
    }
}

namespace {

const DiffEntry& metric_entry(const DiffReport& diff, std::string_view name) {
    for (const auto& e : diff.metrics) {
        if (e.metric == name) return e;
    }
    throw SchemaMismatchError("diff report lacks metric '" + std::string(name) + "'");
}

} // namespace

void write_fig3_csv(const DiffReport& diff, std::ostream& out) {
    const auto& outputs = metric_entry(diff, "average_outputs");
    const auto& total = metric_entry(diff, "total_cost");
    const auto& cpu = metric_entry(diff, "cost_per_unit");
    out << "scenario,outputs,total_cost,cost_per_unit\n";
    out << diff.base_label << ',' << format_number(outputs.base) << ','
        << format_number(total.base) << ',' << format_number(cpu.base) << '\n';
    out << diff.alt_label << ',' << format_number(outputs.alt) << ',' << format_number(total.alt)
        << ',' << format_number(cpu.alt) << '\n';
}

void write_fig4_csv(const DiffReport& diff, std::ostream& out) {
    out << "operator_pool,current,developed\n";
    for (const auto& p : diff.operator_utilization) {
        out << p.id << ',' << format_number(p.base) << ',' << format_number(p.alt) << '\n';
    }
}

void write_fig5_csv(const DiffReport& diff, std::ostream& out) {
    out << "queue,current_mean_wait_h,developed_mean_wait_h\n";
    for (const auto& q : diff.queue_waits) {
        out << q.id << ',' << format_number(q.base) << ',' << format_number(q.alt) << '\n';
    }
}

void print_diff_table(const DiffReport& diff, std::ostream& out) {
    out << std::left << std::setw(34) << "Metric" << std::right << std::setw(14)
        << diff.base_label << std::setw(14) << diff.alt_label << std::setw(12) << "delta"
        << std::setw(10) << "pct" << '\n';
    for (const auto& e : diff.metrics) {
        char base[32], alt[32], delta[32], pct[32];
        std::snprintf(base, sizeof(base), "%.2f", e.base);
        std::snprintf(alt, sizeof(alt), "%.2f", e.alt);
        std::snprintf(delta, sizeof(delta), "%+.2f", e.delta);
        if (e.percent) {
            std::snprintf(pct, sizeof(pct), "%+.1f%%", *e.percent);
        } else {
            std::snprintf(pct, sizeof(pct), "n/a");
        }
        out << std::left << std::setw(34) << e.metric << std::right << std::setw(14) << base
            << std::setw(14) << alt << std::setw(12) << delta << std::setw(10) << pct << '\n';
    }
}

} // namespace colorline
