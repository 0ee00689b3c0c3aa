#pragma once

#include <ostream>
#include <string>

#include "colorline/analysis.hpp"
#include "colorline/result.hpp"

namespace colorline {

// Deterministic number formatting shared by every writer, so identical
// runs produce byte-identical files.
std::string format_number(double value);

// metric,unit,mean,std,ci95_halfwidth — canonical row order.
void write_summary_csv(const SummaryReport& report, std::ostream& out);

// station,mean_time_weighted_length,mean_wait_h,max_wait_h
void write_queues_csv(const SummaryReport& report, std::ostream& out);

// pool,kind,capacity,busy_hours,idle_hours,utilization
void write_pools_csv(const SummaryReport& report, std::ostream& out);

// Human-readable table mirroring the report rows.
void print_summary_table(const SummaryReport& report, std::ostream& out);

// metric,unit,base,alt,delta,percent ("n/a" when base is 0)
void write_diff_csv(const DiffReport& diff, std::ostream& out);

// scenario,outputs,total_cost,cost_per_unit
void write_fig3_csv(const DiffReport& diff, std::ostream& out);

// operator_pool,current,developed
void write_fig4_csv(const DiffReport& diff, std::ostream& out);

// queue,current_mean_wait_h,developed_mean_wait_h
void write_fig5_csv(const DiffReport& diff, std::ostream& out);

void print_diff_table(const DiffReport& diff, std::ostream& out);

} // namespace colorline
