#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace colorline {

// Integral of a piecewise-constant trajectory. update() records a new value
// from `time` onward; finalize closes the integral at the horizon.
class TimeWeightedAccumulator {
public:
    void update(double time, double new_value) {
        integral_ += value_ * (time - last_time_);
        last_time_ = time;
        value_ = new_value;
    }

    void add(double time, double delta) { update(time, value_ + delta); }

    double integral_to(double horizon) const {
        return integral_ + value_ * (horizon - last_time_);
    }

    double average_over(double horizon) const {
        return horizon > 0.0 ? integral_to(horizon) / horizon : 0.0;
    }

    double current_value() const { return value_; }

private:
    double last_time_ = 0.0;
    double value_ = 0.0;
    double integral_ = 0.0;
};

// Tally statistic over per-observation values (waiting times).
class TallyAccumulator {
public:
    void add(double x) {
        sum_ += x;
        if (count_ == 0 || x > max_) max_ = x;
        ++count_;
    }

    std::uint64_t count() const { return count_; }
    double sum() const { return sum_; }
    double mean() const { return count_ ? sum_ / static_cast<double>(count_) : 0.0; }
    double max() const { return count_ ? max_ : 0.0; }

private:
    double sum_ = 0.0;
    double max_ = 0.0;
    std::uint64_t count_ = 0;
};

// Time average of an explicit (time, value) trajectory over [0, horizon].
// Times must be non-decreasing and start at 0. Throws EmptySeriesError on an
// empty series.
double time_weighted_average(std::span<const std::pair<double, double>> series,
                             double horizon);

// Cross-replication summary of one scalar metric.
struct Summary {
    double mean = 0.0;
    double stddev = 0.0;
    double ci95_halfwidth = 0.0;
    std::uint64_t count = 0;
};

// mean / sample std dev / 95% half-width t(0.975, n-1) * s / sqrt(n).
// Half-width is 0 for n == 1. Throws EmptyListError for n == 0.
Summary summarize(std::span<const double> values);

// Two-sided Student-t critical value, P(T <= t) = probability.
double student_t_quantile(double probability, double degrees_of_freedom);

} // namespace colorline
