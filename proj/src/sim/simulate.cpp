#include "ocproc/sim/simulate.hpp"

#include <cmath>
#include <random>

#include "ocproc/common/parallel.hpp"
#include "ocproc/common/rng.hpp"
#include "ocproc/geom/camera.hpp"
#include "ocproc/product.hpp"
#include "ocproc/rad/dark.hpp"
#include "ocproc/rad/smear.hpp"

namespace ocproc::sim {

using geom::CameraModel;
using geom::CameraPose;
using geom::Vec3;

static const double kMaxInjection = geom::deg2rad(2.0);

void inject_geolocation_bias(EffectsConfig& fx, double roll_rad, double pitch_rad) {
    if (std::abs(roll_rad) >= kMaxInjection || std::abs(pitch_rad) >= kMaxInjection)
        raise(ErrorKind::domain, "attitude bias injection beyond 2 deg sanity bound");
    fx.attitude_bias_roll_rad = roll_rad;
    fx.attitude_bias_pitch_rad = pitch_rad;
}

void inject_tilt_drift(EffectsConfig& fx, double slope_rad_per_deg, double intercept_rad) {
    if (std::abs(slope_rad_per_deg) * 20.0 + std::abs(intercept_rad) >= kMaxInjection)
        raise(ErrorKind::domain, "tilt drift injection beyond 2 deg sanity bound");
    fx.tilt_drift_slope_rad_per_deg = slope_rad_per_deg;
    fx.tilt_drift_intercept_rad = intercept_rad;
}

void inject_band_misalignment(EffectsConfig& fx, int band, Polynomial along_rad,
                              Polynomial across_rad) {
    for (double col : {0.0, 1000.0, 2000.0, 3000.0, 3999.0}) {
        if (std::abs(along_rad(col)) >= kMaxInjection ||
            std::abs(across_rad(col)) >= kMaxInjection)
            raise(ErrorKind::domain, "band misalignment injection beyond 2 deg sanity bound");
    }
    fx.band_misalignment[band] = {std::move(along_rad), std::move(across_rad)};
}

rad::CalibCoeffs default_coeffs(const std::vector<int>& bands) {
    rad::CalibCoeffs coeffs;
    for (int b : bands) {
        rad::BandCoeffs bc;
        bc.c_per_row = {0.005};  // ~1000 counts at the ocean reference radiance
        bc.d_per_row = {0.0};
        coeffs.bands[b] = bc;
    }
    return coeffs;
}

namespace {

double nonlin_inverse(const rad::NonlinLookup& nl, double y) {
    if (nl.is_identity()) return y;
    // The lookup is strictly increasing; bisect over a generous count range.
    double lo = nl.x.front() - (nl.x.back() - nl.x.front());
    double hi = nl.x.back() + (nl.x.back() - nl.x.front());
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (nl(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> make_dark_profile(const EffectsConfig& fx, std::size_t cols) {
    std::vector<std::size_t> edges = rad::equal_port_edges(cols, fx.ports);
    std::vector<double> profile(cols, 0.0);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double bias = p < fx.dark_port_bias_counts.size() ? fx.dark_port_bias_counts[p] : 0.0;
        for (std::size_t j = edges[p]; j < edges[p + 1]; ++j)
            profile[j] = fx.dark_base_counts + bias +
                         fx.dark_profile_amp_counts *
                             std::sin(2.0 * geom::kPi * 3.0 * double(j) / double(cols));
    }
    return profile;
}

std::vector<double> make_prnu_response(const EffectsConfig& fx, int band, std::size_t cols,
                                       std::uint64_t seed) {
    auto it = fx.prnu_response.find(band);
    if (it != fx.prnu_response.end()) {
        if (it->second.size() != cols)
            raise(ErrorKind::domain, "explicit PRNU table length mismatch");
        return it->second;
    }
    std::mt19937_64 eng = make_engine(seed, mix_seed(0x9e11u, std::uint64_t(band)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> resp(cols);
    for (double& v : resp) {
        v = 1.0 + fx.prnu_stripe_rms * gauss(eng);
        if (v < 0.5) v = 0.5;
    }
    return resp;
}

Raster bin_frame(const Raster& phys, std::size_t row_bin, std::size_t col_bin) {
    std::size_t rows = phys.rows() / row_bin, cols = phys.cols() / col_bin;
    Raster out(rows, cols);
    double norm = 1.0 / double(row_bin * col_bin);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double acc = 0;
            for (std::size_t i = 0; i < row_bin; ++i)
                for (std::size_t j = 0; j < col_bin; ++j)
                    acc += phys(r * row_bin + i, c * col_bin + j);
            out(r, c) = acc * norm;
        }
    return out;
}

}  // namespace

geom::GroundPoint acquisition_center(const geom::OrbitElements& elements,
                                     const geom::SensorGeometry& sensor,
                                     const SimOptions& opt) {
    double period = opt.frame_period_s > 0 ? opt.frame_period_s
                                           : mode_traits(opt.mode).frame_period_s;
    double t_mid = opt.start_time + 0.5 * double(opt.n_frames - 1) * period;
    geom::SensorGeometry s = sensor;
    s.tilt_deg = opt.tilt_deg;
    geom::AttitudeState nominal;
    return geom::pixel_to_ground(s, geom::propagate_orbit(elements, t_mid), nominal,
                                 s.center_row(), s.center_col(), opt.terrain_height_m);
}

SceneConfig scene_config_for_acquisition(SceneConfig base, const geom::OrbitElements& elements,
                                         const geom::SensorGeometry& sensor,
                                         const SimOptions& opt, double margin_m) {
    geom::SensorGeometry s = sensor;
    s.tilt_deg = opt.tilt_deg;
    geom::CameraModel cam(s, geom::physical_layout(s));
    double period = opt.frame_period_s > 0 ? opt.frame_period_s
                                           : mode_traits(opt.mode).frame_period_s;
    double lat_min = 90, lat_max = -90, lon_min = 180, lon_max = -180;
    double rmax = double(s.active_rows - 1), cmax = double(s.active_cols - 1);
    for (double frac : {0.0, 0.5, 1.0}) {
        double t = opt.start_time + frac * double(opt.n_frames - 1) * period;
        geom::AttitudeState nominal;
        nominal.epoch_s = t;
        geom::CameraPose pose = geom::make_pose(geom::propagate_orbit(elements, t), nominal);
        for (auto [r, c] : {std::pair{0.0, 0.0}, std::pair{0.0, cmax}, std::pair{rmax, 0.0},
                            std::pair{rmax, cmax}, std::pair{rmax / 2, cmax / 2}}) {
            geom::GroundPoint p = geom::geodetic_from_ecef(
                cam.ground_ecef(pose, r, c, opt.terrain_height_m));
            lat_min = std::min(lat_min, p.lat_deg);
            lat_max = std::max(lat_max, p.lat_deg);
            lon_min = std::min(lon_min, p.lon_deg);
            lon_max = std::max(lon_max, p.lon_deg);
        }
    }
    base.center_lat_deg = 0.5 * (lat_min + lat_max);
    base.center_lon_deg = 0.5 * (lon_min + lon_max);
    double mlat = 111320.0;
    double mlon = 111320.0 * std::cos(geom::deg2rad(base.center_lat_deg));
    base.extent_along_m = (lat_max - lat_min) * mlat + 2.0 * margin_m;
    base.extent_across_m = (lon_max - lon_min) * mlon + 2.0 * margin_m;
    return base;
}

Raster render_reference(const Scene& scene, int band, const Raster& grid_lat,
                        const Raster& grid_lon) {
    Raster out(grid_lat.rows(), grid_lat.cols(), kUnfilledValue);
    for (std::size_t i = 0; i < grid_lat.rows(); ++i)
        for (std::size_t j = 0; j < grid_lat.cols(); ++j) {
            double lat = grid_lat(i, j), lon = grid_lon(i, j);
            if (lat == kUnfilledValue) continue;
            out(i, j) = scene.radiance(band, lat, lon);
        }
    return out;
}

nlohmann::json TruthBundle::to_json() const {
    nlohmann::json j;
    j["scene_seed"] = scene_seed;
    j["attitude_bias_roll_rad"] = effects.attitude_bias_roll_rad;
    j["attitude_bias_pitch_rad"] = effects.attitude_bias_pitch_rad;
    j["tilt_drift_slope_rad_per_deg"] = effects.tilt_drift_slope_rad_per_deg;
    j["tilt_drift_intercept_rad"] = effects.tilt_drift_intercept_rad;
    j["drift_rate_dps"] = effects.drift_rate_dps;
    j["jitter_amp_deg"] = effects.jitter_amp_deg;
    for (const auto& [band, profile] : dark_profile)
        j["dark_profile"][std::to_string(band)] = profile;
    for (const auto& [band, resp] : prnu_response)
        j["prnu_response"][std::to_string(band)] = resp;
    for (const auto& [band, polys] : effects.band_misalignment) {
        j["band_misalignment"][std::to_string(band)] = {
            {"along_rad", polys.first.coeffs()}, {"across_rad", polys.second.coeffs()}};
    }
    for (const FrameTruth& f : frames) {
        nlohmann::json fj;
        fj["time"] = f.time;
        fj["roll_rad"] = f.true_attitude.roll_rad;
        fj["pitch_rad"] = f.true_attitude.pitch_rad;
        fj["yaw_rad"] = f.true_attitude.yaw_rad;
        fj["position"] = {f.orbit.position.x(), f.orbit.position.y(), f.orbit.position.z()};
        fj["velocity"] = {f.orbit.velocity.x(), f.orbit.velocity.y(), f.orbit.velocity.z()};
        fj["center_ground"] = {f.center_ground.x(), f.center_ground.y(), f.center_ground.z()};
        j["frames"].push_back(fj);
    }
    return j;
}

SimResult simulate_acquisition(const Scene& scene, const geom::OrbitElements& elements,
                               const geom::SensorGeometry& sensor, const EffectsConfig& fx,
                               const SimOptions& opt) {
    if (opt.n_frames == 0) raise(ErrorKind::domain, "need at least one frame");
    geom::validate_elements(elements);
    const ModeTraits& traits = mode_traits(opt.mode);
    double period = opt.frame_period_s > 0 ? opt.frame_period_s : traits.frame_period_s;

    rad::CalibCoeffs coeffs = opt.coeffs.bands.empty() ? default_coeffs(opt.bands) : opt.coeffs;

    geom::SensorGeometry base = sensor;
    base.tilt_deg = opt.tilt_deg;

    // Per-band true cameras (physical layout, injected misalignment).
    std::map<int, CameraModel> cameras;
    for (int b : opt.bands) {
        geom::SensorGeometry s = base;
        auto it = fx.band_misalignment.find(b);
        if (it != fx.band_misalignment.end()) {
            s.interior_along = it->second.first;
            s.interior_across = it->second.second;
        }
        cameras.emplace(b, CameraModel(s, geom::physical_layout(s)));
    }

    rad::SmearParams smear_params;
    smear_params.mode = opt.mode;
    smear_params.row_transfer_us = fx.row_transfer_us;
    smear_params.total_detector_rows = fx.total_detector_rows;
    smear_params.integration_ms = opt.integration_ms;
    rad::SmearModel smear_model = build_smear_weights(smear_params);

    std::vector<double> dark_profile = make_dark_profile(fx, traits.frame_cols);
    std::map<int, std::vector<double>> prnu;
    for (int b : opt.bands) prnu[b] = make_prnu_response(fx, b, traits.frame_cols, opt.seed);

    // True attitude per frame: platform drift ramp plus seeded jitter.
    std::vector<geom::AttitudeState> true_att(opt.n_frames);
    for (std::size_t k = 0; k < opt.n_frames; ++k) {
        double t = opt.start_time + double(k) * period;
        geom::AttitudeState a;
        a.epoch_s = t;
        a.pitch_rad = geom::deg2rad(fx.drift_rate_dps) * (t - opt.start_time);
        if (fx.jitter_amp_deg > 0) {
            std::mt19937_64 eng = make_engine(opt.seed, mix_seed(0x71e2u, k));
            std::normal_distribution<double> gauss(0.0, geom::deg2rad(fx.jitter_amp_deg));
            a.roll_rad += gauss(eng);
            a.pitch_rad += gauss(eng);
            a.yaw_rad += gauss(eng);
        }
        a.drift_rate_dps = fx.drift_rate_dps;
        a.jitter_amp_deg = fx.jitter_amp_deg;
        true_att[k] = a;
    }

    // Truncate when the track leaves the scene.
    std::size_t usable = opt.n_frames;
    {
        const CameraModel& cam = cameras.begin()->second;
        for (std::size_t k = 0; k < opt.n_frames; ++k) {
            double t = opt.start_time + double(k) * period;
            CameraPose pose = geom::make_pose(geom::propagate_orbit(elements, t), true_att[k]);
            bool inside = true;
            double rmax = double(cam.rows() - 1), cmax = double(cam.cols() - 1);
            for (auto [r, c] : {std::pair{0.0, 0.0}, std::pair{0.0, cmax},
                                std::pair{rmax, 0.0}, std::pair{rmax, cmax}}) {
                try {
                    Vec3 g = cam.ground_ecef(pose, r, c, opt.terrain_height_m);
                    geom::GroundPoint p = geom::geodetic_from_ecef(g);
                    if (!scene.contains(p.lat_deg, p.lon_deg)) inside = false;
                } catch (const Error&) {
                    inside = false;
                }
            }
            if (!inside) {
                usable = k;
                break;
            }
        }
    }
    if (usable == 0)
        raise(ErrorKind::domain, "acquisition track starts outside the scene");

    SimResult result;
    result.partial = usable < opt.n_frames;
    rad::FrameStack& stack = result.stack;
    stack.mode = opt.mode;
    stack.bands = opt.bands;
    stack.frame_period_s = period;
    stack.sensor = sensor;
    stack.sensor.tilt_deg = opt.tilt_deg;
    stack.orbit = elements;

    // Reported attitude: the corruptions calibration is expected to remove.
    double reported_pitch = fx.attitude_bias_pitch_rad +
                            fx.tilt_drift_slope_rad_per_deg * opt.tilt_deg +
                            fx.tilt_drift_intercept_rad;
    stack.attitude =
        geom::AttitudeTimeline::constant(fx.attitude_bias_roll_rad, reported_pitch, 0.0);

    TruthBundle& truth = result.truth;
    truth.scene_seed = scene.seed;
    truth.effects = fx;
    for (int b : opt.bands) {
        if (fx.dark) truth.dark_profile[b] = dark_profile;
        if (fx.prnu) truth.prnu_response[b] = prnu[b];
    }
    truth.frames.resize(usable);

    stack.frames.resize(usable * opt.bands.size());
    unsigned max_count = (1u << traits.bit_depth) - 1u;

    parallel_for(usable, [&](std::size_t k) {
        double t = opt.start_time + double(k) * period;
        geom::OrbitState orb = geom::propagate_orbit(elements, t);
        CameraPose pose = geom::make_pose(orb, true_att[k]);

        FrameTruth ft;
        ft.time = t;
        ft.true_attitude = true_att[k];
        ft.orbit = orb;
        const CameraModel& cam0 = cameras.begin()->second;
        ft.center_ground = cam0.ground_ecef(pose, cam0.sensor().center_row(),
                                            cam0.sensor().center_col(), opt.terrain_height_m);
        truth.frames[k] = ft;

        for (std::size_t bi = 0; bi < opt.bands.size(); ++bi) {
            int band = opt.bands[bi];
            const CameraModel& cam = cameras.at(band);
            const rad::BandCoeffs& bc = coeffs.for_band(band);
            const BandLevel& level = scene.band_level(band);
            geom::Mat3 rot = pose.body2ecef * cam.mount();

            Raster phys(cam.rows(), cam.cols());
            for (std::size_t r = 0; r < cam.rows(); ++r) {
                double c_row = bc.c_at(r / traits.row_binning);
                double d_row = bc.d_at(r / traits.row_binning);
                for (std::size_t c = 0; c < cam.cols(); ++c) {
                    Vec3 dir = rot * cam.look_pinhole_fast(r, c);
                    Vec3 g = geom::intersect_ellipsoid(pose.position, dir,
                                                       opt.terrain_height_m);
                    geom::GroundPoint gp = geom::geodetic_from_ecef(g);
                    double L = scene.radiance(level, gp.lat_deg, gp.lon_deg);
                    phys(r, c) = nonlin_inverse(bc.nonlin, (L - d_row) / c_row);
                }
            }
            Raster frame = bin_frame(phys, traits.row_binning, traits.col_binning);

            if (fx.smear) frame = smear_model.apply(frame);
            if (fx.prnu) {
                const std::vector<double>& resp = prnu[band];
                for (std::size_t r = 0; r < frame.rows(); ++r)
                    for (std::size_t c = 0; c < frame.cols(); ++c) frame(r, c) *= resp[c];
            }
            if (fx.dark)
                for (std::size_t r = 0; r < frame.rows(); ++r)
                    for (std::size_t c = 0; c < frame.cols(); ++c)
                        frame(r, c) += dark_profile[c];
            if (fx.quantize)
                for (double& v : frame.values()) v = std::nearbyint(v);
            if (fx.noise) {
                std::mt19937_64 eng =
                    make_engine(opt.seed, mix_seed(0x40153u, k * 64 + bi));
                std::normal_distribution<double> gauss(0.0, 1.0);
                for (double& v : frame.values()) {
                    double var = fx.read_noise_counts * fx.read_noise_counts +
                                 fx.shot_noise_scale * std::max(0.0, v);
                    v += std::sqrt(var) * gauss(eng);
                }
                if (fx.quantize)
                    for (double& v : frame.values()) v = std::nearbyint(v);
            }

            rad::RawFrame raw;
            raw.band = band;
            raw.mode = opt.mode;
            raw.start_time = t;
            raw.tilt_deg = opt.tilt_deg;
            raw.integration_ms = opt.integration_ms;
            raw.counts = CountImage(frame.rows(), frame.cols());
            for (std::size_t i = 0; i < frame.size(); ++i) {
                double v = frame.values()[i];
                if (v < 0) v = 0;
                if (v > double(max_count)) v = double(max_count);
                raw.counts.values()[i] = std::uint16_t(std::nearbyint(v));
            }

            if (fx.dark && k % traits.dark_cadence == 0) {
                std::mt19937_64 eng =
                    make_engine(opt.seed, mix_seed(0xda27u, k * 64 + bi));
                std::normal_distribution<double> gauss(0.0, 1.0);
                raw.dark_row.resize(std::min(traits.dark_width, traits.frame_cols));
                for (std::size_t j = 0; j < raw.dark_row.size(); ++j) {
                    double v = dark_profile[j];
                    if (fx.noise && fx.read_noise_counts > 0)
                        v += fx.read_noise_counts * gauss(eng);
                    if (v < 0) v = 0;
                    if (v > double(max_count)) v = double(max_count);
                    raw.dark_row[j] = std::uint16_t(std::nearbyint(v));
                }
            }
            stack.frames[bi * usable + k] = std::move(raw);
        }
    });

    return result;
}

}  // namespace ocproc::sim
