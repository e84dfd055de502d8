#include "ocproc/geom/virtual_line.hpp"

namespace ocproc::geom {

double VirtualLinearModel::tilt_at(double t) const {
    if (tilt_times.empty()) return 0.0;
    if (t <= tilt_times.front()) return tilt_deg.front();
    if (t >= tilt_times.back()) return tilt_deg.back();
    for (std::size_t i = 1; i < tilt_times.size(); ++i) {
        if (t <= tilt_times[i]) {
            double w = (t - tilt_times[i - 1]) / (tilt_times[i] - tilt_times[i - 1]);
            return tilt_deg[i - 1] + w * (tilt_deg[i] - tilt_deg[i - 1]);
        }
    }
    return tilt_deg.back();
}

VirtualLinearModel build_virtual_linear_model(const rad::FrameStack& stack, Mode mode) {
    std::vector<double> times = stack.frame_times();  // validates non-empty, monotone
    const ModeTraits& traits = mode_traits(mode);

    VirtualLinearModel m;
    m.mode = mode;
    m.start_time = times.front();
    m.num_scans = num_scans_for(mode, times.size());
    m.num_pixels = traits.frame_cols;
    if (times.size() > 1)
        m.line_period = (times.back() - times.front()) / (2.0 * double(times.size() - 1));
    else
        m.line_period = 0.5 * (stack.frame_period_s > 0 ? stack.frame_period_s
                                                        : traits.frame_period_s);

    auto first_band = stack.band_frames(stack.frames.front().band);
    for (const rad::RawFrame* f : first_band) {
        m.tilt_times.push_back(f->start_time);
        m.tilt_deg.push_back(f->tilt_deg);
    }

    CameraModel cam = virtual_line_camera(stack.sensor, mode, m.tilt_deg.front());
    m.pointing.reserve(m.num_pixels);
    for (std::size_t c = 0; c < m.num_pixels; ++c)
        m.pointing.push_back(cam.look_pinhole_fast(0, c));
    return m;
}

CameraModel virtual_line_camera(const SensorGeometry& sensor, Mode mode, double tilt_deg) {
    SensorGeometry s = sensor;
    s.tilt_deg = tilt_deg;
    return CameraModel(s, virtual_line_layout(s, mode));
}

}  // namespace ocproc::geom
