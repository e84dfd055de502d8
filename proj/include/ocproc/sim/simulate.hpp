#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "json.hpp"

#include "ocproc/rad/frame.hpp"
#include "ocproc/rad/radiance.hpp"
#include "ocproc/sim/scene.hpp"

namespace ocproc::sim {

// Every effect is independently switchable; with everything off the camera
// is ideal (quantization stays on unless disabled for a test).
struct EffectsConfig {
    // Dark signal: base level plus per-port steps plus a smooth column ramp.
    bool dark = false;
    double dark_base_counts = 50.0;
    std::vector<double> dark_port_bias_counts;  // one entry per port
    double dark_profile_amp_counts = 3.0;
    std::size_t ports = 4;

    // Photo response non-uniformity: per-column response factors, mean ~1.
    bool prnu = false;
    double prnu_stripe_rms = 0.02;
    std::map<int, std::vector<double>> prnu_response;  // optional explicit table

    bool smear = false;
    double row_transfer_us = 2.0;
    std::size_t total_detector_rows = 54;

    bool quantize = true;

    bool noise = false;
    double read_noise_counts = 0.0;
    double shot_noise_scale = 0.0;  // variance = scale * signal counts

    // Reported-attitude corruptions the geometric calibration removes.
    double attitude_bias_roll_rad = 0.0;
    double attitude_bias_pitch_rad = 0.0;
    double tilt_drift_slope_rad_per_deg = 0.0;
    double tilt_drift_intercept_rad = 0.0;
    // Per-band optical misalignment: look-angle offsets (rad) vs physical
    // column index (along, across).
    std::map<int, std::pair<Polynomial, Polynomial>> band_misalignment;

    // Real platform motion the ground segment never learns.
    double drift_rate_dps = 0.0;      // pitch ramp, deg/s
    double jitter_amp_deg = 0.0;      // rms per-frame attitude jitter
};

void inject_geolocation_bias(EffectsConfig& fx, double roll_rad, double pitch_rad);
void inject_tilt_drift(EffectsConfig& fx, double slope_rad_per_deg, double intercept_rad = 0.0);
void inject_band_misalignment(EffectsConfig& fx, int band, Polynomial along_rad,
                              Polynomial across_rad);

struct SimOptions {
    Mode mode = Mode::lac;
    std::vector<int> bands = {1};
    std::size_t n_frames = 40;
    double start_time = 0.0;
    double frame_period_s = 0.0;  // 0: mode nominal
    double tilt_deg = 0.0;
    double integration_ms = 64.0;
    double terrain_height_m = 0.0;
    std::uint64_t seed = 1;
    rad::CalibCoeffs coeffs;  // counts <-> radiance; defaults built if empty
};

rad::CalibCoeffs default_coeffs(const std::vector<int>& bands);

struct FrameTruth {
    double time = 0.0;
    geom::AttitudeState true_attitude;
    geom::OrbitState orbit;
    geom::Vec3 center_ground = geom::Vec3::Zero();  // boresight ground point
};

struct TruthBundle {
    std::uint64_t scene_seed = 0;
    EffectsConfig effects;
    std::map<int, std::vector<double>> dark_profile;   // injected DS per band/col
    std::map<int, std::vector<double>> prnu_response;  // injected response per band/col
    std::vector<FrameTruth> frames;
    nlohmann::json to_json() const;
};

struct SimResult {
    rad::FrameStack stack;
    TruthBundle truth;
    bool partial = false;  // track left the scene; stack was truncated
};

// Renders physical rows through the rigorous geometry, bins onboard, then
// applies the enabled effects in order smear -> PRNU -> dark -> quantize ->
// noise. Shielded-row dark samples are emitted at the mode cadence.
SimResult simulate_acquisition(const Scene& scene, const geom::OrbitElements& elements,
                               const geom::SensorGeometry& sensor, const EffectsConfig& fx,
                               const SimOptions& opt);

// Sub-satellite boresight ground point at the middle of the acquisition;
// scenes are centered here so tilted acquisitions stay in-scene.
geom::GroundPoint acquisition_center(const geom::OrbitElements& elements,
                                     const geom::SensorGeometry& sensor, const SimOptions& opt);

// Scene extents covering the whole acquisition footprint plus a margin.
// Fills center and extents of `base` and returns it.
SceneConfig scene_config_for_acquisition(SceneConfig base, const geom::OrbitElements& elements,
                                         const geom::SensorGeometry& sensor,
                                         const SimOptions& opt, double margin_m = 25e3);

// The ideal radiance raster a perfectly geolocated product would contain:
// the scene sampled at each claimed pixel location of `grid_lat/grid_lon`.
Raster render_reference(const Scene& scene, int band, const Raster& grid_lat,
                        const Raster& grid_lon);

}  // namespace ocproc::sim
