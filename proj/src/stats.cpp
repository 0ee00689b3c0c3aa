#include "colorline/stats.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "colorline/errors.hpp"

namespace colorline {

double time_weighted_average(std::span<const std::pair<double, double>> series,
                             double horizon) {
    if (series.empty()) throw EmptySeriesError("time_weighted_average: empty series");
    if (horizon <= 0.0) throw EmptySeriesError("time_weighted_average: horizon must be > 0");
    TimeWeightedAccumulator acc;
    for (const auto& [t, v] : series) {
        acc.update(t, v);
    }
    return acc.average_over(horizon);
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) throw EmptyListError("summarize: no observations");
    Summary s;
    s.count = values.size();
    double sum = 0.0;
    for (double x : values) sum += x;
    const double n = static_cast<double>(values.size());
    s.mean = sum / n;
    if (values.size() < 2) return s;
    double ss = 0.0;
    for (double x : values) {
        const double d = x - s.mean;
        ss += d * d;
    }
    s.stddev = std::sqrt(ss / (n - 1.0));
    s.ci95_halfwidth = student_t_quantile(0.975, n - 1.0) * s.stddev / std::sqrt(n);
    return s;
}

double student_t_quantile(double probability, double degrees_of_freedom) {
    boost::math::students_t dist(degrees_of_freedom);
    return boost::math::quantile(dist, probability);
}

} // namespace colorline
