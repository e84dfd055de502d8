#include "ocproc/geom/orbit.hpp"

#include <algorithm>

namespace ocproc::geom {

void validate_elements(const OrbitElements& el) {
    double r = el.semi_major_m();
    if (!(r > kWgs84A)) raise(ErrorKind::domain, "orbit altitude must be positive");
    if (!(el.altitude_m > 2e5 && el.altitude_m < 2e6))
        raise(ErrorKind::domain, "orbit altitude outside the supported LEO band");
}

OrbitState propagate_orbit(const OrbitElements& el, double t) {
    validate_elements(el);
    double a = el.semi_major_m();
    double n = el.mean_motion();
    double dt = t - el.epoch_s;
    double u = deg2rad(el.arg_lat0_deg) + n * dt;
    double inc = deg2rad(el.inclination_deg);
    // Node longitude in the rotating frame drifts west with Earth rotation.
    double node = deg2rad(el.node_lon_deg) - kEarthRotationRate * dt;

    Mat3 plane = rot_z(node) * rot_x(inc);
    Vec3 r_pl{a * std::cos(u), a * std::sin(u), 0.0};
    Vec3 v_pl{-a * n * std::sin(u), a * n * std::cos(u), 0.0};

    OrbitState st;
    st.epoch_s = t;
    st.position = plane * r_pl;
    // Earth-fixed velocity: inertial rate minus the frame rotation term.
    st.velocity = plane * v_pl - Vec3{0, 0, kEarthRotationRate}.cross(st.position);
    return st;
}

AttitudeTimeline::AttitudeTimeline(std::vector<AttitudeState> samples)
    : samples_(std::move(samples)) {
    if (samples_.empty()) raise(ErrorKind::domain, "attitude timeline needs samples");
    std::sort(samples_.begin(), samples_.end(),
              [](const AttitudeState& a, const AttitudeState& b) { return a.epoch_s < b.epoch_s; });
}

AttitudeTimeline AttitudeTimeline::constant(double roll, double pitch, double yaw) {
    AttitudeState s;
    s.roll_rad = roll;
    s.pitch_rad = pitch;
    s.yaw_rad = yaw;
    return AttitudeTimeline({s});
}

AttitudeState AttitudeTimeline::at(double t) const {
    if (samples_.size() == 1 || t <= samples_.front().epoch_s) {
        AttitudeState s = samples_.front();
        s.epoch_s = t;
        return s;
    }
    if (t >= samples_.back().epoch_s) {
        AttitudeState s = samples_.back();
        s.epoch_s = t;
        return s;
    }
    auto hi = std::upper_bound(
        samples_.begin(), samples_.end(), t,
        [](double v, const AttitudeState& s) { return v < s.epoch_s; });
    auto lo = hi - 1;
    double w = (t - lo->epoch_s) / (hi->epoch_s - lo->epoch_s);
    AttitudeState s;
    s.epoch_s = t;
    s.roll_rad = lo->roll_rad + w * (hi->roll_rad - lo->roll_rad);
    s.pitch_rad = lo->pitch_rad + w * (hi->pitch_rad - lo->pitch_rad);
    s.yaw_rad = lo->yaw_rad + w * (hi->yaw_rad - lo->yaw_rad);
    s.drift_rate_dps = lo->drift_rate_dps;
    s.jitter_amp_deg = lo->jitter_amp_deg;
    return s;
}

Mat3 body_to_ecef(const OrbitState& orbit, const AttitudeState& att) {
    Vec3 z = -orbit.position.normalized();             // nadir
    Vec3 y = z.cross(orbit.velocity).normalized();     // across-track
    Vec3 x = y.cross(z);                               // along-track
    Mat3 orb2ecef;
    orb2ecef.col(0) = x;
    orb2ecef.col(1) = y;
    orb2ecef.col(2) = z;
    Mat3 body2orb = rot_z(att.yaw_rad) * rot_y(att.pitch_rad) * rot_x(att.roll_rad);
    return orb2ecef * body2orb;
}

}  // namespace ocproc::geom
