#pragma once

#include <cstdint>
#include <vector>

#include "ocproc/common/raster.hpp"
#include "ocproc/geom/orbit.hpp"
#include "ocproc/geom/sensor.hpp"
#include "ocproc/mode.hpp"

namespace ocproc::rad {

// One onboard-binned detector frame as transmitted to the ground.
struct RawFrame {
    int band = 1;  // 1-based band id (1..13)
    Mode mode = Mode::lac;
    double start_time = 0.0;
    double tilt_deg = 0.0;
    double integration_ms = 64.0;
    CountImage counts;
    // Shielded-row samples; empty when this frame carried none (they are
    // transmitted every few frames). Covers dark_width columns from index 0.
    std::vector<std::uint16_t> dark_row;

    std::size_t rows() const { return counts.rows(); }
    std::size_t cols() const { return counts.cols(); }
};

// A frame after Level-0: values in working double precision with the
// acquisition metadata it needs downstream.
struct FrameData {
    int band = 1;
    Mode mode = Mode::lac;
    double start_time = 0.0;
    double tilt_deg = 0.0;
    Raster values;
};

// The full acquisition record: frames of every band plus the geometry the
// ground segment is allowed to assume (reported, not true, attitude).
struct FrameStack {
    Mode mode = Mode::lac;
    std::vector<int> bands;
    double frame_period_s = 0.0;
    geom::SensorGeometry sensor;
    geom::OrbitElements orbit;
    geom::AttitudeTimeline attitude = geom::AttitudeTimeline::constant(0, 0, 0);
    std::vector<RawFrame> frames;  // ordered by band, then time

    std::vector<const RawFrame*> band_frames(int band) const;
    // Distinct frame start times, validated monotone and band-consistent.
    std::vector<double> frame_times() const;
};

void validate_stack(const FrameStack& stack);

}  // namespace ocproc::rad
