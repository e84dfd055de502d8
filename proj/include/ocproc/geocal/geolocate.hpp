#pragma once

#include <vector>

#include "ocproc/geocal/match.hpp"
#include "ocproc/geom/camera.hpp"
#include "ocproc/product.hpp"

namespace ocproc::geocal {

// Pixel offset <-> look angle at nadir-style sensitivity:
// angle = atan(offset_px * igfov_ground / altitude).
double offsets_to_angles(double offset_px, double igfov_ground_m, double altitude_m);
double angles_to_offsets(double angle_rad, double igfov_ground_m, double altitude_m);

// Ground displacement per radian of look-angle change, per product column.
// Inside the calibration this replaces the nadir-style conversion so one
// pass nulls the bias even at the swath edge.
struct ColumnSensitivity {
    std::vector<double> along_m_per_rad;   // indexed by product column
    std::vector<double> across_m_per_rad;
};

ColumnSensitivity column_sensitivity(const geom::CameraModel& camera,
                                     const geom::CameraPose& pose, double height_m,
                                     std::size_t product_cols);

struct ResidualPoint {
    double row = 0, col = 0;   // product pixel of the tie point
    double along_m = 0;        // product content minus reference, meters
    double across_m = 0;
};

struct ResidualField {
    std::vector<ResidualPoint> points;
    std::size_t swath_cols = 0;
};

struct GeolocationAssessment {
    ErrorStats stats;      // kilometers
    ResidualField field;
};

// Dense-matches the geolocation-bearing band of a product against a
// reference raster sharing its grid (typically the scene rendered at the
// product's claimed per-pixel locations) and converts the offsets to ground
// meters using the local geolocation-layer scales.
GeolocationAssessment estimate_geolocation_error(const ProductGrid& product,
                                                 const Raster& reference, int band,
                                                 const MatchConfig& cfg = {});

// Constant roll/pitch bias (robust median of converted residual angles)
// plus a cubic interior polynomial per axis over the physical column for the
// column-dependent remainder.
AttitudeCorrection calibrate_geolocation(const ResidualField& field,
                                         const ColumnSensitivity& sensitivity,
                                         double col_scale, double col_offset);

// Nearest-rank 90th percentile of radial error magnitudes.
double ce90(std::vector<double> radial_errors);

// Per-band mean and 3*sample-sigma of per-product mean offsets.
struct BBRSample {
    int band = 0;
    double along_px = 0;
    double across_px = 0;
};
struct BBRStatsEntry {
    double along_mean = 0, along_3sigma = 0;
    double across_mean = 0, across_3sigma = 0;
    std::size_t products = 0;
};
std::map<int, BBRStatsEntry> bbr_stats(const std::vector<std::vector<BBRSample>>& per_product);

}  // namespace ocproc::geocal
