#pragma once

#include <string>
#include <vector>

#include "colorline/rng.hpp"

namespace colorline {

enum class DistFamily {
    Constant,
    Exponential,
    Uniform,
    Triangular,
};

// Duration distribution, all parameters in hours. Sampling is inverse-CDF
// only: every sample consumes exactly one uniform draw, except Constant
// which consumes none. This keeps streams aligned when comparing scenarios.
struct DistributionSpec {
    DistFamily family = DistFamily::Constant;
    double value = 0.0; // Constant
    double mean = 0.0;  // Exponential
    double lo = 0.0;    // Uniform / Triangular
    double hi = 0.0;    // Uniform / Triangular
    double mode = 0.0;  // Triangular

    static DistributionSpec constant(double v);
    static DistributionSpec exponential(double mean);
    static DistributionSpec uniform(double lo, double hi);
    static DistributionSpec triangular(double lo, double mode, double hi);

    // All parameter-invariant violations, empty when valid.
    std::vector<std::string> violations() const;

    // Throws InvalidParamsError when violations() is non-empty.
    void ensure_valid() const;

    // True when every sample is the same value (used by trace tests and
    // the overlap/trace reasoning in scenario tests).
    bool is_degenerate() const { return family == DistFamily::Constant; }

    // Expected value of the distribution.
    double expected() const;

    // Inverse CDF at u in [0, 1).
    double quantile(double u) const;

    // Draw one duration; consumes one uniform from the stream unless
    // Constant.
    double sample(RngStream& stream) const;

    bool operator==(const DistributionSpec&) const = default;
};

const char* to_string(DistFamily family);

} // namespace colorline
