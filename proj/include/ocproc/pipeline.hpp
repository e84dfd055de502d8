#pragma once

#include <optional>
#include <string>

#include "ocproc/calibration.hpp"
#include "ocproc/eval/eval.hpp"
#include "ocproc/geocal/bbr.hpp"
#include "ocproc/geocal/tilt.hpp"
#include "ocproc/io/config.hpp"
#include "ocproc/io/formats.hpp"
#include "ocproc/tdi/tdi.hpp"

namespace ocproc::pipeline {

struct SimulateResult {
    sim::Scene scene;
    sim::SimResult sim;
};

// Scene generation (auto-sized to the footprint unless configured) plus the
// acquisition itself.
SimulateResult run_simulate(const io::RunConfig& cfg);

// Dark, PRNU and smear corrections (as calibrated) followed by the
// count-to-radiance conversion. A null calibration set applies the nominal
// coefficients only.
std::vector<rad::FrameData> radiometric_correct(const rad::FrameStack& stack,
                                                const CalibrationSet* calib);

// Radiometry then ground TDI to L1B/L1C. Refuses a calibration set whose
// sensor fingerprint differs from the stack's.
ProductGrid process_stack(const rad::FrameStack& stack, const CalibrationSet* calib,
                          const io::RunConfig& cfg);

// Geometry reconstruction from product metadata (L1B calibration inputs).
struct ProductGeometry {
    geom::SensorGeometry sensor;
    geom::OrbitElements orbit;
    double tilt_deg = 0.0;
    double mid_time = 0.0;
    Mode mode = Mode::lac;
};
ProductGeometry geometry_from_product(const ProductGrid& product);
geocal::ColumnSensitivity product_sensitivity(const ProductGrid& product);

// Calibration runs: each appends its result to the set (corrections compose
// with what the input product was processed with) and returns a
// human-readable report.
std::string calibrate_bbr_step(CalibrationSet& calib, const ProductGrid& product,
                               int ref_band, const geocal::BBROptions& opt = {});
struct GeoCalResult {
    geocal::GeolocationAssessment assessment;
    geocal::AttitudeCorrection correction;
};
GeoCalResult calibrate_geo_step(CalibrationSet& calib, const ProductGrid& product,
                                const Raster& reference, int band,
                                const geocal::MatchConfig& match = {16, 15, 40, 0.7, 10});
std::string calibrate_tilt_step(CalibrationSet& calib,
                                const std::vector<std::pair<double, double>>& samples);

// Evaluation report text blocks used by the CLI.
std::string report_snr(const eval::SNREntry& e);
std::string report_geo(const geocal::ErrorStats& stats);
std::string report_spectrum(const eval::SpectrumReport& rep);

CalibrationSet default_calibration(const rad::FrameStack& stack);

}  // namespace ocproc::pipeline
