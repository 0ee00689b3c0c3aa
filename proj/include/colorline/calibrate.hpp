#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "colorline/errors.hpp"
#include "colorline/model.hpp"

namespace colorline {

// A report metric the calibration should reproduce.
struct CalibrationTarget {
    std::string metric; // canonical report metric name
    double target = 0.0;
    double tolerance = 0.0; // absolute
};

// A scalar model parameter the search may move inside [lo, hi].
// Path grammar:
//   source.batch_size
//   source.interarrival.<field>
//   station.<id>.service.<field>
//   route.<from>.<to>.transport.<field>
// with <field> one of value|mean|lo|hi|mode. batch_size rounds to the
// nearest integer >= 1.
struct FreeParameter {
    std::string path;
    double lo = 0.0;
    double hi = 0.0;
};

struct ParamValue {
    std::string path;
    double value = 0.0;
};

struct CalibrationResidual {
    std::string metric;
    double target = 0.0;
    double tolerance = 0.0;
    double achieved = 0.0;
    double residual = 0.0; // (achieved - target) / target
    bool within_tolerance = false;
};

struct CalibrationResult {
    std::vector<ParamValue> parameters;
    std::vector<CalibrationResidual> residuals;
    double objective = 0.0; // sum of squared relative residuals
    int evaluations = 0;
    bool all_within_tolerance = false;
};

// Raised when the evaluation budget runs out (or the search converges)
// before every target sits inside its tolerance; carries the best-so-far.
class BudgetExhaustedError : public SimError {
public:
    BudgetExhaustedError(std::string message, CalibrationResult best_so_far)
        : SimError(std::move(message)), best(std::move(best_so_far)) {}

    CalibrationResult best;
};

struct CalibrateOptions {
    int replications = 50;
    std::uint64_t seed = 1;
    int starts = 3; // multi-start coordinate descent
    std::optional<double> horizon;
};

// Returns a copy of the model with one parameter replaced. Throws
// UnknownTargetError for unresolvable paths.
LineModel with_parameter(const LineModel& model, const std::string& path, double value);

// Reads a parameter's current value.
double read_parameter(const LineModel& model, const std::string& path);

// Derivative-free coordinate descent with multi-start over the bounded
// box, each evaluation using common random numbers. Returns the best
// parameter set once every target is within tolerance; otherwise throws
// BudgetExhaustedError carrying the best-so-far. InfeasibleBoundsError on
// an empty or invalid box.
CalibrationResult calibrate(const LineModel& model, const std::vector<FreeParameter>& parameters,
                            const std::vector<CalibrationTarget>& targets, int budget,
                            const CalibrateOptions& options = {});

} // namespace colorline
