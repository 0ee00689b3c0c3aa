#include "colorline/distribution.hpp"

#include <cmath>
#include <sstream>

#include "colorline/errors.hpp"

namespace colorline {

DistributionSpec DistributionSpec::constant(double v) {
    DistributionSpec d;
    d.family = DistFamily::Constant;
    d.value = v;
    return d;
}

DistributionSpec DistributionSpec::exponential(double mean) {
    DistributionSpec d;
    d.family = DistFamily::Exponential;
    d.mean = mean;
    return d;
}

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
    DistributionSpec d;
    d.family = DistFamily::Uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

DistributionSpec DistributionSpec::triangular(double lo, double mode, double hi) {
    DistributionSpec d;
    d.family = DistFamily::Triangular;
    d.lo = lo;
    d.mode = mode;
    d.hi = hi;
    return d;
}

std::vector<std::string> DistributionSpec::violations() const {
    std::vector<std::string> out;
    auto check = [&out](bool ok, const std::string& msg) {
        if (!ok) out.push_back(msg);
    };
    switch (family) {
    case DistFamily::Constant:
        check(std::isfinite(value) && value >= 0.0, "constant: value must be finite and >= 0");
        break;
    case DistFamily::Exponential:
        check(std::isfinite(mean) && mean > 0.0, "exponential: mean must be finite and > 0");
        break;
    case DistFamily::Uniform:
        check(std::isfinite(lo) && std::isfinite(hi), "uniform: bounds must be finite");
        check(lo <= hi, "uniform: requires lo <= hi");
        check(lo >= 0.0, "uniform: lo must be >= 0 (durations are non-negative)");
        break;
    case DistFamily::Triangular:
        check(std::isfinite(lo) && std::isfinite(mode) && std::isfinite(hi),
              "triangular: parameters must be finite");
        check(lo <= mode && mode <= hi, "triangular: requires lo <= mode <= hi");
        check(lo >= 0.0, "triangular: lo must be >= 0 (durations are non-negative)");
        break;
    }
    return out;
}

void DistributionSpec::ensure_valid() const {
    auto v = violations();
    if (v.empty()) return;
    std::ostringstream oss;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) oss << "; ";
        oss << v[i];
    }
    throw InvalidParamsError(oss.str());
}

double DistributionSpec::expected() const {
    switch (family) {
    case DistFamily::Constant:
        return value;
    case DistFamily::Exponential:
        return mean;
    case DistFamily::Uniform:
        return 0.5 * (lo + hi);
    case DistFamily::Triangular:
        return (lo + mode + hi) / 3.0;
    }
    return 0.0;
}

double DistributionSpec::quantile(double u) const {
    switch (family) {
    case DistFamily::Constant:
        return value;
    case DistFamily::Exponential:
        return -mean * std::log1p(-u);
    case DistFamily::Uniform:
        return lo + u * (hi - lo);
    case DistFamily::Triangular: {
        const double span = hi - lo;
        if (span <= 0.0) return lo;
        const double cut = (mode - lo) / span;
        if (u < cut) return lo + std::sqrt(u * span * (mode - lo));
        return hi - std::sqrt((1.0 - u) * span * (hi - mode));
    }
    }
    return 0.0;
}

double DistributionSpec::sample(RngStream& stream) const {
    ensure_valid();
    if (family == DistFamily::Constant) return value;
    return quantile(stream.uniform());
}

const char* to_string(DistFamily family) {
    switch (family) {
    case DistFamily::Constant:
        return "constant";
    case DistFamily::Exponential:
        return "exponential";
    case DistFamily::Uniform:
        return "uniform";
    case DistFamily::Triangular:
        return "triangular";
    }
    return "?";
}

} // namespace colorline
