#pragma once

#include <functional>
#include <vector>

#include "ocproc/geom/earth.hpp"

namespace ocproc::geom {

struct OrbitState {
    double epoch_s = 0.0;
    Vec3 position = Vec3::Zero();  // Earth-fixed, meters
    Vec3 velocity = Vec3::Zero();  // Earth-fixed, m/s
};

struct AttitudeState {
    double epoch_s = 0.0;
    double roll_rad = 0.0;
    double pitch_rad = 0.0;
    double yaw_rad = 0.0;
    double drift_rate_dps = 0.0;     // bound ~6e-4 deg/s
    double jitter_amp_deg = 0.0;     // ~1.53e-3 deg
};

// Near-circular sun-synchronous elements for the acquisition simulator.
// node_lon_deg is the Earth-fixed longitude of the ascending node at the
// epoch; arg_lat0 is measured from that node along the orbit.
struct OrbitElements {
    double altitude_m = 732500.0;
    double inclination_deg = 98.331;
    double node_lon_deg = 0.0;
    double arg_lat0_deg = 0.0;
    double epoch_s = 0.0;

    double semi_major_m() const { return kWgs84A + altitude_m; }
    double mean_motion() const {
        double a = semi_major_m();
        return std::sqrt(kEarthGM / (a * a * a));
    }
    double period_s() const { return 2.0 * kPi / mean_motion(); }
};

void validate_elements(const OrbitElements& el);

// Circular-orbit Earth-fixed state including Earth rotation.
OrbitState propagate_orbit(const OrbitElements& el, double t);

// Linear interpolation between attitude samples; ends are held.
class AttitudeTimeline {
  public:
    AttitudeTimeline() = default;
    explicit AttitudeTimeline(std::vector<AttitudeState> samples);
    static AttitudeTimeline constant(double roll, double pitch, double yaw);

    AttitudeState at(double t) const;
    const std::vector<AttitudeState>& samples() const { return samples_; }

  private:
    std::vector<AttitudeState> samples_;
};

using OrbitProvider = std::function<OrbitState(double)>;
using AttitudeProvider = std::function<AttitudeState(double)>;

// Rotation taking body axes to Earth-fixed axes: local orbital frame
// (x along velocity, z to nadir) composed with the roll/pitch/yaw attitude.
Mat3 body_to_ecef(const OrbitState& orbit, const AttitudeState& att);

}  // namespace ocproc::geom
