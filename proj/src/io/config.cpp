#include "ocproc/io/config.hpp"

#include <functional>
#include <sstream>

#include "ocproc/io/container.hpp"

namespace ocproc::io {

namespace {

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        raise(ErrorKind::config, "key '" + key + "': expected a number, got '" + v + "'");
    }
}

long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        raise(ErrorKind::config, "key '" + key + "': expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    raise(ErrorKind::config, "key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
    std::istringstream ss(v);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(to_double(key, tok));
    if (out.empty()) raise(ErrorKind::config, "key '" + key + "': expected numbers");
    return out;
}

std::vector<int> to_ints(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (double d : to_doubles(key, v)) out.push_back(int(d));
    return out;
}

struct KeyDef {
    const char* key;
    const char* type;
    const char* descr;
    std::function<void(RunConfig&, const std::string&, const std::string&)> set;
};

const std::vector<KeyDef>& registry() {
    static const std::vector<KeyDef> defs = {
        {"config_version", "int", "schema version, must be 1",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.config_version = int(to_int(k, v));
         }},
        {"mode", "lac|gac", "acquisition mode",
         [](RunConfig& c, const std::string&, const std::string& v) {
             c.sim.mode = mode_from_name(v);
         }},
        {"seed", "int", "master seed for scene and effects",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.seed = std::uint64_t(to_int(k, v));
             c.scene.seed = c.sim.seed;
         }},
        {"bands", "int list", "1-based band ids to simulate/process",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.bands = to_ints(k, v);
         }},
        {"sensor.focal_length_mm", "float", "focal length",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sensor.focal_length_mm = to_double(k, v);
         }},
        {"sensor.pixel_pitch_um", "float", "detector pixel pitch",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sensor.pixel_pitch_um = to_double(k, v);
         }},
        {"sensor.active_cols", "int", "across-track pixels",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sensor.active_cols = std::size_t(to_int(k, v));
         }},
        {"sensor.active_rows", "int", "along-track rows",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sensor.active_rows = std::size_t(to_int(k, v));
         }},
        {"sensor.tilt_deg", "float", "payload tilt, [-20, 20]",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sensor.tilt_deg = to_double(k, v);
             c.sim.tilt_deg = c.sensor.tilt_deg;
         }},
        {"sensor.alignment_rad", "3 floats", "mounting angles",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             std::vector<double> a = to_doubles(k, v);
             if (a.size() != 3) raise(ErrorKind::config, "key '" + k + "': expected 3 values");
             for (int i = 0; i < 3; ++i) c.sensor.alignment_rad[i] = a[i];
         }},
        {"sensor.distortion", "default|identity", "optical distortion model",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v == "default") {
                 geom::SensorGeometry d = geom::default_sensor();
                 c.sensor.distortion_along = d.distortion_along;
                 c.sensor.distortion_across = d.distortion_across;
             } else if (v == "identity") {
                 c.sensor.distortion_along = Polynomial::identity();
                 c.sensor.distortion_across = Polynomial::identity();
             } else {
                 raise(ErrorKind::config, "key '" + k + "': expected default or identity");
             }
         }},
        {"orbit.altitude_km", "float", "orbit altitude",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.orbit.altitude_m = to_double(k, v) * 1000.0;
         }},
        {"orbit.inclination_deg", "float", "orbit inclination",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.orbit.inclination_deg = to_double(k, v);
         }},
        {"orbit.node_lon_deg", "float", "ascending-node longitude at epoch",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.orbit.node_lon_deg = to_double(k, v);
         }},
        {"orbit.arg_lat0_deg", "float", "argument of latitude at epoch",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.orbit.arg_lat0_deg = to_double(k, v);
         }},
        {"orbit.epoch_s", "float", "element epoch",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.orbit.epoch_s = to_double(k, v);
         }},
        {"sim.n_frames", "int", "frames to acquire",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.n_frames = std::size_t(to_int(k, v));
         }},
        {"sim.frame_period_s", "float", "frame cadence (0 = mode nominal)",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.frame_period_s = to_double(k, v);
         }},
        {"sim.integration_ms", "float", "integration time per frame",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.integration_ms = to_double(k, v);
         }},
        {"sim.start_time", "float", "acquisition start epoch",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.start_time = to_double(k, v);
         }},
        {"sim.terrain_height_m", "float", "constant scene height",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.sim.terrain_height_m = to_double(k, v);
             c.tdi.terrain_height_m = c.sim.terrain_height_m;
         }},
        {"scene.cell_m", "float", "ground-truth grid cell",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene.cell_m = to_double(k, v);
         }},
        {"scene.spectrum_slope", "float", "texture PSD log-log slope",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene.spectrum_slope = to_double(k, v);
         }},
        {"scene.mean_radiance", "float", "band mean radiance",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene_mean = to_double(k, v);
         }},
        {"scene.contrast", "float", "texture rms relative to the mean",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene_contrast = to_double(k, v);
         }},
        {"scene.uniform", "bool", "constant radiance field",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene.uniform = to_bool(k, v);
         }},
        {"scene.auto_extent", "bool", "size the scene from the acquisition footprint",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene_auto_extent = to_bool(k, v);
         }},
        {"scene.extent_along_km", "float", "north-south extent",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene.extent_along_m = to_double(k, v) * 1000.0;
         }},
        {"scene.extent_across_km", "float", "east-west extent",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene.extent_across_m = to_double(k, v) * 1000.0;
         }},
        {"scene.center_lat_deg", "float", "scene center (manual extent)",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene.center_lat_deg = to_double(k, v);
         }},
        {"scene.center_lon_deg", "float", "scene center (manual extent)",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.scene.center_lon_deg = to_double(k, v);
         }},
        {"effects.dark", "bool", "inject dark signal",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.dark = to_bool(k, v);
         }},
        {"effects.dark_base_counts", "float", "dark base level",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.dark_base_counts = to_double(k, v);
         }},
        {"effects.dark_port_bias", "float list", "per-port dark steps",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.dark_port_bias_counts = to_doubles(k, v);
         }},
        {"effects.dark_profile_amp", "float", "smooth dark column structure",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.dark_profile_amp_counts = to_double(k, v);
         }},
        {"effects.ports", "int", "readout port count",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.ports = std::size_t(to_int(k, v));
         }},
        {"effects.prnu", "bool", "inject PRNU stripes",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.prnu = to_bool(k, v);
         }},
        {"effects.prnu_rms", "float", "stripe rms (relative)",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.prnu_stripe_rms = to_double(k, v);
         }},
        {"effects.smear", "bool", "inject frame-transfer smear",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.smear = to_bool(k, v);
         }},
        {"effects.row_transfer_us", "float", "row transfer time",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.row_transfer_us = to_double(k, v);
         }},
        {"effects.total_detector_rows", "int", "rows crossed during transfer",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.total_detector_rows = std::size_t(to_int(k, v));
         }},
        {"effects.quantize", "bool", "quantize counts",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.quantize = to_bool(k, v);
         }},
        {"effects.noise", "bool", "inject detector noise",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.noise = to_bool(k, v);
         }},
        {"effects.read_noise_counts", "float", "read noise std",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.read_noise_counts = to_double(k, v);
         }},
        {"effects.shot_noise_scale", "float", "shot noise variance per count",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.shot_noise_scale = to_double(k, v);
         }},
        {"effects.attitude_bias_roll_rad", "float", "reported-attitude roll corruption",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.attitude_bias_roll_rad = to_double(k, v);
         }},
        {"effects.attitude_bias_pitch_rad", "float", "reported-attitude pitch corruption",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.attitude_bias_pitch_rad = to_double(k, v);
         }},
        {"effects.tilt_drift_slope_rad_per_deg", "float", "pitch error per degree of tilt",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.tilt_drift_slope_rad_per_deg = to_double(k, v);
         }},
        {"effects.tilt_drift_intercept_rad", "float", "constant tilt-drift term",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.tilt_drift_intercept_rad = to_double(k, v);
         }},
        {"effects.drift_rate_dps", "float", "real platform drift",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.drift_rate_dps = to_double(k, v);
         }},
        {"effects.jitter_amp_deg", "float", "per-frame attitude jitter",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.effects.jitter_amp_deg = to_double(k, v);
         }},
        {"tdi.sigma", "float", "exponential kernel width",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.tdi.sigma = to_double(k, v);
         }},
        {"tdi.window_along", "int", "neighborhood half-extent, rows",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.tdi.w_along = int(to_int(k, v));
         }},
        {"tdi.window_across", "int", "neighborhood half-extent, columns",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.tdi.w_across = int(to_int(k, v));
         }},
        {"tdi.kernel", "exp|nn", "binning kernel",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v == "exp") c.tdi.kernel = tdi::Kernel::exponential;
             else if (v == "nn") c.tdi.kernel = tdi::Kernel::nearest;
             else raise(ErrorKind::config, "key '" + k + "': expected exp or nn");
         }},
        {"tdi.normalize", "bool", "normalize kernel weights",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.tdi.normalize = to_bool(k, v);
         }},
        {"tdi.squared_distance", "bool", "kernel distance is squared ground offset",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.tdi.squared_distance = to_bool(k, v);
         }},
        {"tdi.level", "l1b|l1c", "product level",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.tdi.level = level_from_name(v);
             (void)k;
         }},
        {"tdi.l1c_pixel_size_m", "float", "map grid pixel size (0 = mode nominal)",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.tdi.l1c_pixel_size_m = to_double(k, v);
         }},
        {"proc.require_calibration", "bool", "refuse to process without a calibration set",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.require_calibration = to_bool(k, v);
         }},
        {"proc.geo_band", "int", "geolocation reference channel",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.geo_band = int(to_int(k, v));
         }},
        {"proc.bbr_ref_band", "int", "band-to-band reference channel",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.bbr_ref_band = int(to_int(k, v));
         }},
    };
    return defs;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    bool saw_version = false;
    std::istringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            std::size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            raise(ErrorKind::config,
                  "line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        bool handled = false;
        for (const KeyDef& def : registry()) {
            if (key == def.key) {
                def.set(cfg, key, value);
                handled = true;
                if (key == std::string("config_version")) saw_version = true;
                break;
            }
        }
        if (!handled)
            raise(ErrorKind::config, "unknown configuration key '" + key + "'");
    }
    if (!saw_version) raise(ErrorKind::config, "missing config_version");
    if (cfg.config_version != 1)
        raise(ErrorKind::config,
              "unsupported config_version " + std::to_string(cfg.config_version));

    cfg.scene.bands.clear();
    for (int b : cfg.sim.bands)
        cfg.scene.bands[b] = sim::BandLevel{cfg.scene_mean, cfg.scene_contrast};
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::vector<std::uint8_t> bytes = read_file_bytes(path);
    return parse_config_text(std::string(bytes.begin(), bytes.end()));
}

std::string config_schema_doc() {
    std::ostringstream out;
    for (const KeyDef& def : registry())
        out << def.key << " (" << def.type << "): " << def.descr << "\n";
    return out.str();
}

}  // namespace ocproc::io
