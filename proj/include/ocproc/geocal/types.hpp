#pragma once

#include <vector>

#include "ocproc/common/poly.hpp"

namespace ocproc::geocal {

struct TiePoint {
    double ref_row = 0, ref_col = 0;
    double tgt_row = 0, tgt_col = 0;
    double score = 0;         // normalized cross-correlation peak
    double d_along = 0;       // tgt - ref, rows (along-track)
    double d_across = 0;      // tgt - ref, columns (across-track)
};

// Per-band offset relative to the reference band as a function of column,
// cubic polynomial per axis, pixels; plus the derived look-angle corrections
// (rad vs physical detector column) used in processing.
struct BBRProfile {
    int band = 0;
    Polynomial along;   // pixels vs product column index
    Polynomial across;  // pixels vs product column index
    double fit_rms_along = 0.0;
    double fit_rms_across = 0.0;
    std::size_t tie_points = 0;
    std::vector<std::uint8_t> bin_interpolated;  // per field-of-view bin
    Polynomial pitch_correction;  // rad vs physical column (along offsets)
    Polynomial roll_correction;   // rad vs physical column (across offsets)
};

struct AttitudeCorrection {
    double roll_bias_rad = 0.0;
    double pitch_bias_rad = 0.0;
    // Column-dependent remainder (interior calibration), rad vs column.
    Polynomial interior_roll;
    Polynomial interior_pitch;
};

struct TiltDriftModel {
    double slope_rad_per_deg = 0.0;  // pitch residual per degree of tilt
    double intercept_rad = 0.0;
    double residual_rms_rad = 0.0;
    std::size_t point_count = 0;

    double pitch_correction(double tilt_deg) const {
        return slope_rad_per_deg * tilt_deg + intercept_rad;
    }
};

struct AxisStats {
    double median = 0.0;
    double upper_bound = 0.0;  // 95th percentile of per-column medians
    double lower_bound = 0.0;  // 5th percentile of per-column medians
    double mean = 0.0;
    double three_sigma = 0.0;
};

struct ErrorStats {
    AxisStats along;   // kilometers unless stated otherwise
    AxisStats across;
    double ce90 = 0.0;          // radial, same units
    double median_radial = 0.0;
    std::size_t samples = 0;
};

}  // namespace ocproc::geocal
