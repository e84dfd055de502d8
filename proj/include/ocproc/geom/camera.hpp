#pragma once

#include <optional>
#include <vector>

#include "ocproc/geom/orbit.hpp"
#include "ocproc/geom/sensor.hpp"

namespace ocproc::geom {

struct CameraPose {
    Vec3 position = Vec3::Zero();
    Mat3 body2ecef = Mat3::Identity();
};

CameraPose make_pose(const OrbitState& orbit, const AttitudeState& att);

struct PixelLocation {
    double row = 0.0;
    double col = 0.0;
};

// Camera bound to a sample layout (physical array, onboard-binned frame or
// virtual line). Per-column/per-row focal tables make the per-pixel work a
// normalize plus one rotation; projection back to indices shares the same
// formulas so forward/inverse are consistent to solver tolerance.
class CameraModel {
  public:
    CameraModel(const SensorGeometry& sensor, const FrameLayout& layout);

    const SensorGeometry& sensor() const { return sensor_; }
    const FrameLayout& layout() const { return layout_; }
    std::size_t rows() const { return layout_.rows; }
    std::size_t cols() const { return layout_.cols; }
    const Mat3& mount() const { return mount_; }

    // Unit look direction before the tilt/alignment mount rotation.
    Vec3 look_pinhole(double row, double col) const;
    Vec3 look_pinhole_fast(std::size_t row, std::size_t col) const {
        return normalized_dir(xbase_[row] + xshift_[col], ycomp_[col]);
    }
    // Unit look direction in the body frame.
    Vec3 look_body(double row, double col) const { return mount_ * look_pinhole(row, col); }

    // Ground intersection of a pixel at the given ellipsoidal height.
    Vec3 ground_ecef(const CameraPose& pose, double row, double col, double height_m) const;

    struct Projection {
        double phys_row = 0.0;  // physical detector row coordinate
        double row = 0.0;       // layout row (unchanged for zero-extent layouts)
        double col = 0.0;       // layout column
        bool in_front = false;
        bool in_bounds = false;
    };
    // Where a ground point falls on the detector for a given pose.
    Projection project(const CameraPose& pose, const Vec3& point_ecef) const;

  private:
    Vec3 normalized_dir(double x, double y) const {
        Vec3 v{x, y, f_};
        return v / std::sqrt(x * x + y * y + f_ * f_);
    }
    double focal_x(double phys_row, double phys_col) const;
    double focal_y(double phys_col) const;
    double solve_col(double fy) const;
    double solve_phys_row(double fx, double phys_col) const;

    SensorGeometry sensor_;
    FrameLayout layout_;
    Mat3 mount_ = Mat3::Identity();
    Mat3 mount_t_ = Mat3::Identity();
    double f_ = 0.0;
    std::vector<double> xbase_;   // per layout row: distorted along focal coord
    std::vector<double> xshift_;  // per layout col: interior along term
    std::vector<double> ycomp_;   // per layout col: distorted across focal coord
    bool ycomp_increasing_ = true;
};

// Spec-level operations on the physical array layout.
GroundPoint pixel_to_ground(const SensorGeometry& sensor, const OrbitState& orbit,
                            const AttitudeState& att, double row, double col,
                            double height_m);

struct GroundToPixel {
    double time = 0.0;
    double row = 0.0;
    double col = 0.0;
    int iterations = 0;
};

// Finds the time at which the target crosses the reference detector row and
// returns the fractional pixel there. ref_row defaults to the array center.
GroundToPixel ground_to_pixel(const SensorGeometry& sensor, const OrbitProvider& orbit,
                              const AttitudeProvider& att, double t_begin, double t_end,
                              const GroundPoint& target, double ref_row,
                              double height_m = 0.0);

}  // namespace ocproc::geom
