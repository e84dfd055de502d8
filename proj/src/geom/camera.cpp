#include "ocproc/geom/camera.hpp"

#include <cmath>

namespace ocproc::geom {

CameraPose make_pose(const OrbitState& orbit, const AttitudeState& att) {
    CameraPose p;
    p.position = orbit.position;
    p.body2ecef = body_to_ecef(orbit, att);
    return p;
}

CameraModel::CameraModel(const SensorGeometry& sensor, const FrameLayout& layout)
    : sensor_(sensor), layout_(layout), f_(sensor.focal_m()) {
    validate_sensor(sensor_);
    mount_ = rot_z(sensor_.alignment_rad[2]) * rot_y(sensor_.alignment_rad[1]) *
             rot_x(sensor_.alignment_rad[0]) * rot_y(deg2rad(sensor_.tilt_deg));
    mount_t_ = mount_.transpose();

    xbase_.resize(layout_.rows);
    for (std::size_t r = 0; r < layout_.rows; ++r) {
        double pr = layout_.phys_row(double(r));
        xbase_[r] = sensor_.distortion_along((pr - sensor_.center_row()) * sensor_.pitch_m());
    }
    xshift_.resize(layout_.cols);
    ycomp_.resize(layout_.cols);
    for (std::size_t c = 0; c < layout_.cols; ++c) {
        double pc = layout_.phys_col(double(c));
        xshift_[c] = f_ * sensor_.interior_along(pc);
        ycomp_[c] = focal_y(pc);
    }
    if (layout_.cols >= 2) ycomp_increasing_ = ycomp_.back() > ycomp_.front();
}

double CameraModel::focal_x(double phys_row, double phys_col) const {
    return sensor_.distortion_along((phys_row - sensor_.center_row()) * sensor_.pitch_m()) +
           f_ * sensor_.interior_along(phys_col);
}

double CameraModel::focal_y(double phys_col) const {
    return sensor_.distortion_across((phys_col - sensor_.center_col()) * sensor_.pitch_m()) +
           f_ * sensor_.interior_across(phys_col);
}

Vec3 CameraModel::look_pinhole(double row, double col) const {
    double pr = layout_.phys_row(row);
    double pc = layout_.phys_col(col);
    return normalized_dir(focal_x(pr, pc), focal_y(pc));
}

Vec3 CameraModel::ground_ecef(const CameraPose& pose, double row, double col,
                              double height_m) const {
    Vec3 dir = pose.body2ecef * (mount_ * look_pinhole(row, col));
    return intersect_ellipsoid(pose.position, dir, height_m);
}

// Finds the layout column whose across focal coordinate equals fy: bracket
// on the monotone per-column table, then Newton-polish on the exact curve.
// Values slightly beyond the array are extrapolated; the caller applies the
// bounds check.
double CameraModel::solve_col(double fy) const {
    const std::vector<double>& t = ycomp_;
    std::size_t n = t.size();
    if (n == 1) return 0.0;

    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        bool goRight = ycomp_increasing_ ? (t[mid] <= fy) : (t[mid] >= fy);
        if (goRight) lo = mid; else hi = mid;
    }
    double denom = t[hi] - t[lo];
    double c = denom != 0.0 ? double(lo) + (fy - t[lo]) / denom : double(lo);
    // Newton on the exact per-column curve (near-linear; extrapolates).
    for (int it = 0; it < 3; ++it) {
        double pc = layout_.phys_col(c);
        double g = focal_y(pc) - fy;
        double d = (sensor_.distortion_across.derivative_at(
                        (pc - sensor_.center_col()) * sensor_.pitch_m()) *
                        sensor_.pitch_m() +
                    f_ * sensor_.interior_across.derivative_at(pc)) *
                   layout_.col_scale;
        if (d == 0.0) break;
        c -= g / d;
    }
    return c;
}

double CameraModel::solve_phys_row(double fx, double phys_col) const {
    double x = fx - f_ * sensor_.interior_along(phys_col);
    // distortion_along is near-identity; start from the linear inverse.
    double focal = x;
    for (int it = 0; it < 3; ++it) {
        double g = sensor_.distortion_along(focal) - x;
        double d = sensor_.distortion_along.derivative_at(focal);
        if (d == 0.0) break;
        focal -= g / d;
    }
    return focal / sensor_.pitch_m() + sensor_.center_row();
}

CameraModel::Projection CameraModel::project(const CameraPose& pose,
                                             const Vec3& point_ecef) const {
    constexpr double kEdge = 1e-9;
    Projection out;
    Vec3 d = mount_t_ * (pose.body2ecef.transpose() * (point_ecef - pose.position));
    if (!(d.z() > 0.0)) return out;
    out.in_front = true;
    double fx = f_ * d.x() / d.z();
    double fy = f_ * d.y() / d.z();
    double col = solve_col(fy);
    out.col = col;
    double phys_col = layout_.phys_col(col);
    out.phys_row = solve_phys_row(fx, phys_col);
    bool col_ok = col >= -0.5 - kEdge && col < double(layout_.cols) - 0.5 + kEdge;
    if (layout_.row_scale != 0.0) {
        out.row = (out.phys_row - layout_.row_offset) / layout_.row_scale;
        out.in_bounds = col_ok && out.row >= -0.5 - kEdge &&
                        out.row < double(layout_.rows) - 0.5 + kEdge;
    } else {
        out.row = 0.0;
        out.in_bounds = col_ok;
    }
    return out;
}

GroundPoint pixel_to_ground(const SensorGeometry& sensor, const OrbitState& orbit,
                            const AttitudeState& att, double row, double col,
                            double height_m) {
    if (!(row >= -0.5 && row < double(sensor.active_rows)) ||
        !(col >= -0.5 && col < double(sensor.active_cols)))
        raise(ErrorKind::domain, "pixel index outside the active array");
    CameraModel cam(sensor, physical_layout(sensor));
    Vec3 g = cam.ground_ecef(make_pose(orbit, att), row, col, height_m);
    GroundPoint gp = geodetic_from_ecef(g);
    gp.height_m = height_m;
    return gp;
}

GroundToPixel ground_to_pixel(const SensorGeometry& sensor, const OrbitProvider& orbit,
                              const AttitudeProvider& att, double t_begin, double t_end,
                              const GroundPoint& target, double ref_row, double height_m) {
    if (!(t_end > t_begin)) raise(ErrorKind::domain, "empty search window");
    CameraModel cam(sensor, physical_layout(sensor));
    Vec3 p = ecef_from_geodetic(GroundPoint{target.lat_deg, target.lon_deg, height_m});

    // Solve the along-track (row) collinearity residual over time; the
    // across component is read off the projection, so the column window is
    // kept generous here and bounds-checked at the solution.
    auto residual = [&](double t) -> std::optional<double> {
        CameraPose pose = make_pose(orbit(t), att(t));
        CameraModel::Projection pr = cam.project(pose, p);
        if (!pr.in_front || pr.col < -2.0 || pr.col > double(sensor.active_cols) + 1.0)
            return std::nullopt;
        return pr.phys_row - ref_row;
    };

    // Coarse scan for a sign change of the along-track residual. The target
    // crosses the array in a few seconds, so a fine pitch is needed.
    const int kCoarse = 256;
    double dt = (t_end - t_begin) / kCoarse;
    double prev_t = 0.0;
    std::optional<double> prev_g;
    double lo = 0, hi = 0, glo = 0, ghi = 0;
    bool bracketed = false;
    for (int i = 0; i <= kCoarse; ++i) {
        double t = t_begin + i * dt;
        std::optional<double> g = residual(t);
        if (g && prev_g && ((*prev_g <= 0.0) != (*g <= 0.0))) {
            lo = prev_t;
            hi = t;
            glo = *prev_g;
            ghi = *g;
            bracketed = true;
            break;
        }
        if (g) {
            prev_g = g;
            prev_t = t;
        }
    }
    if (!bracketed)
        raise(ErrorKind::not_visible,
              "ground point does not cross the reference row inside the window");

    // Secant iteration with bisection fallback, tolerance 1e-4 pixel.
    const int kMaxIter = 50;
    const double kTolPx = 1e-4;
    double t = lo, g = glo;
    for (int it = 1; it <= kMaxIter; ++it) {
        double denom = ghi - glo;
        t = (std::abs(denom) > 1e-30) ? lo + (hi - lo) * (-glo / denom) : 0.5 * (lo + hi);
        if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
        std::optional<double> gv = residual(t);
        if (!gv) {
            hi = t;  // shrink; with the generous column window this is rare
            continue;
        }
        g = *gv;
        if (std::abs(g) < kTolPx) {
            CameraPose pose = make_pose(orbit(t), att(t));
            CameraModel::Projection pr = cam.project(pose, p);
            if (pr.col < -0.5 - 1e-6 || pr.col >= double(sensor.active_cols) - 0.5 + 1e-6)
                raise(ErrorKind::not_visible, "target crosses the row outside the swath");
            GroundToPixel out;
            out.time = t;
            out.row = pr.phys_row;
            out.col = pr.col;
            out.iterations = it;
            return out;
        }
        if ((g <= 0.0) == (glo <= 0.0)) {
            lo = t;
            glo = g;
        } else {
            hi = t;
            ghi = g;
        }
    }
    raise(ErrorKind::convergence,
          "ground_to_pixel did not converge; residual " + std::to_string(g) + " px");
}

}  // namespace ocproc::geom
