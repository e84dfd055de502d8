#pragma once

#include <cstddef>
#include <vector>

#include "ocproc/common/poly.hpp"
#include "ocproc/geom/earth.hpp"
#include "ocproc/mode.hpp"

namespace ocproc::geom {

// Frame-transfer camera geometry. The body/camera frame is +x along-track,
// +y across-track and +z toward the ground; detector rows run along-track,
// columns across-track. Distortion polynomials map ideal (regular pixel
// grid) focal-plane coordinates in meters to the effective pinhole position,
// so an identity polynomial gives the plain pinhole model. The interior
// polynomials are a calibration layer: per-column look-angle corrections in
// radians, kept separate from the optical distortion for auditability.
struct SensorGeometry {
    double focal_length_mm = 20.0;
    double pixel_pitch_um = 10.0;
    std::size_t active_cols = 4000;
    std::size_t active_rows = 48;
    double tilt_deg = 0.0;            // along-track payload tilt, |tilt| <= 20
    double alignment_rad[3] = {0, 0, 0};
    Polynomial distortion_along = Polynomial::identity();
    Polynomial distortion_across = Polynomial::identity();
    Polynomial interior_along;   // rad vs column index, default zero
    Polynomial interior_across;  // rad vs column index, default zero

    double focal_m() const { return focal_length_mm * 1e-3; }
    double pitch_m() const { return pixel_pitch_um * 1e-6; }
    double center_row() const { return 0.5 * double(active_rows - 1); }
    double center_col() const { return 0.5 * double(active_cols - 1); }
};

void validate_sensor(const SensorGeometry& s);

// Default flight geometry: the across-track distortion cubic pulls the
// ideal 45 deg edge field angle in to the realized +/-43.5 deg field of view.
SensorGeometry default_sensor();

// Angular field-of-view half width (deg) at the array column edge.
double edge_field_angle_deg(const SensorGeometry& s);

// Pixel look direction in the body frame (unit vector). Indices are
// fractional; valid range is [-0.5, n-0.5).
Vec3 look_vector(const SensorGeometry& s, double row, double col);

// Maps frame indices of a given sample layout onto physical detector
// indices: physical = scale * index + offset.
struct FrameLayout {
    std::size_t rows = 48;
    std::size_t cols = 4000;
    double row_scale = 1.0, row_offset = 0.0;
    double col_scale = 1.0, col_offset = 0.0;

    double phys_row(double r) const { return row_scale * r + row_offset; }
    double phys_col(double c) const { return col_scale * c + col_offset; }
};

FrameLayout physical_layout(const SensorGeometry& s);
FrameLayout binned_layout(const SensorGeometry& s, Mode m);
// Single-line layout used by the virtual linear sensor: the trailing edge
// (physical row -0.5) of the detector, at the binned column grid of the mode.
FrameLayout virtual_line_layout(const SensorGeometry& s, Mode m);

}  // namespace ocproc::geom
