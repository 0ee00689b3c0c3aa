#pragma once

#include "colorline/model.hpp"

namespace colorline {

// Calibrated knobs of the built-in color line. Defaults are the shipped
// calibration result; `calibrate` reproduces them from the report targets.
struct FixtureParams {
    int batch_size = 105;          // caldrons loaded at shift start
    double resin_service = 0.030;  // hours, mean
    double paste_service = 0.0667;
    double color_service = 0.364;
    double solvent_service = 0.22;
    double qc_service = 0.12;
    double weighing_service = 0.10;
    double manual_packing_service = 0.32;
};

// Station ids of the fixture, in line order.
namespace fixture_ids {
inline constexpr const char* kResin = "resin_addition";
inline constexpr const char* kPaste = "paste_mixing";
inline constexpr const char* kColor = "color_production";
inline constexpr const char* kSolvent = "solvent_mixing";
inline constexpr const char* kQc = "quality_control";
inline constexpr const char* kWeighing = "weighing";
inline constexpr const char* kPackAuto = "packaging_auto";
inline constexpr const char* kPackManualA = "packaging_manual_a";
inline constexpr const char* kPackManualB = "packaging_manual_b";
inline constexpr const char* kPackOperators = "packaging_operators";
inline constexpr const char* kColorOperators = "color_operators";
inline constexpr const char* kPermilMachines = "permil_machines";
} // namespace fixture_ids

// The built-in color production line:
// Source -> resin addition -> paste mixing -> color production (2 permil
// machines) -> solvent mixing -> quality control (fail -> solvent mixing)
// -> weighing -> packaging (3 modes, one fully automatic) -> Sink.
LineModel build_paper_line(const FixtureParams& params = {});

} // namespace colorline
