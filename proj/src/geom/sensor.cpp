#include "ocproc/geom/sensor.hpp"

namespace ocproc::geom {

void validate_sensor(const SensorGeometry& s) {
    if (!(s.focal_length_mm > 0)) raise(ErrorKind::domain, "focal length must be positive");
    if (!(s.pixel_pitch_um > 0)) raise(ErrorKind::domain, "pixel pitch must be positive");
    if (!(std::abs(s.tilt_deg) <= 20.0))
        raise(ErrorKind::domain, "payload tilt outside [-20, 20] deg");
    if (s.active_cols == 0 || s.active_rows == 0)
        raise(ErrorKind::domain, "sensor must have active pixels");
}

SensorGeometry default_sensor() {
    SensorGeometry s;
    // Cubic coefficient chosen so the focal position of the array edge
    // (2000 pixels = 20 mm off axis) maps to tan(43.5 deg) * f.
    double y_edge = 0.5 * double(s.active_cols) * s.pitch_m();
    double y_eff = s.focal_m() * std::tan(deg2rad(43.5));
    double c3 = (y_eff - y_edge) / (y_edge * y_edge * y_edge);
    s.distortion_across = Polynomial({0.0, 1.0, 0.0, c3});
    s.distortion_along = Polynomial({0.0, 1.0, 0.0, c3});
    return s;
}

double edge_field_angle_deg(const SensorGeometry& s) {
    double y_edge = 0.5 * double(s.active_cols) * s.pitch_m();
    return rad2deg(std::atan2(s.distortion_across(y_edge), s.focal_m()));
}

static Vec3 look_body_raw(const SensorGeometry& s, double row, double col) {
    double x = s.distortion_along((row - s.center_row()) * s.pitch_m());
    double y = s.distortion_across((col - s.center_col()) * s.pitch_m());
    double f = s.focal_m();
    x += f * s.interior_along(col);
    y += f * s.interior_across(col);
    Vec3 v{x, y, f};
    v.normalize();
    return rot_z(s.alignment_rad[2]) * rot_y(s.alignment_rad[1]) *
           rot_x(s.alignment_rad[0]) * (rot_y(deg2rad(s.tilt_deg)) * v);
}

Vec3 look_vector(const SensorGeometry& s, double row, double col) {
    if (!(row >= -0.5 && row < double(s.active_rows)) ||
        !(col >= -0.5 && col < double(s.active_cols)))
        raise(ErrorKind::domain, "pixel index outside the active array");
    return look_body_raw(s, row, col);
}

FrameLayout physical_layout(const SensorGeometry& s) {
    return FrameLayout{s.active_rows, s.active_cols, 1.0, 0.0, 1.0, 0.0};
}

FrameLayout binned_layout(const SensorGeometry& s, Mode m) {
    const ModeTraits& t = mode_traits(m);
    FrameLayout l;
    l.rows = t.frame_rows;
    l.cols = t.frame_cols;
    // The binned sample at index k averages physical pixels
    // [k*b, k*b + b - 1]; its effective center is k*b + (b-1)/2.
    l.row_scale = double(t.row_binning);
    l.row_offset = 0.5 * double(t.row_binning - 1);
    l.col_scale = double(t.col_binning);
    l.col_offset = 0.5 * double(t.col_binning - 1);
    (void)s;
    return l;
}

FrameLayout virtual_line_layout(const SensorGeometry& s, Mode m) {
    FrameLayout l = binned_layout(s, m);
    l.rows = 1;
    l.row_scale = 0.0;
    l.row_offset = -0.5;
    return l;
}

}  // namespace ocproc::geom
