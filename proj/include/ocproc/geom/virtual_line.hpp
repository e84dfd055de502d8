#pragma once

#include <vector>

#include "ocproc/geom/camera.hpp"
#include "ocproc/rad/frame.hpp"

namespace ocproc::geom {

// Output-grid definition for Level-1B: a synthetic single-line sensor that
// starts at the trailing edge of the first frame footprint and advances two
// scans per frame period.
struct VirtualLinearModel {
    Mode mode = Mode::lac;
    double start_time = 0.0;
    double line_period = 0.0;
    std::size_t num_scans = 0;
    std::size_t num_pixels = 0;
    std::vector<Vec3> pointing;  // per-column pinhole look directions
    // Commanded tilt schedule sampled at the frame times.
    std::vector<double> tilt_times;
    std::vector<double> tilt_deg;

    double scan_time(std::size_t scan) const { return start_time + double(scan) * line_period; }
    double tilt_at(double t) const;
};

VirtualLinearModel build_virtual_linear_model(const rad::FrameStack& stack, Mode mode);

// Camera bound to the virtual line layout at a given scan's tilt.
CameraModel virtual_line_camera(const SensorGeometry& sensor, Mode mode, double tilt_deg);

}  // namespace ocproc::geom
