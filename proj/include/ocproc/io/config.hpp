#pragma once

#include <string>

#include "ocproc/geom/orbit.hpp"
#include "ocproc/geom/sensor.hpp"
#include "ocproc/sim/simulate.hpp"
#include "ocproc/tdi/tdi.hpp"

namespace ocproc::io {

// One parameter tree for the whole chain, read from a versioned key-value
// text file (`key = value`, '#' comments). Unknown keys and bad types are
// schema errors. The key list is documented in the README.
struct RunConfig {
    int config_version = 1;
    geom::SensorGeometry sensor = geom::default_sensor();
    geom::OrbitElements orbit;
    sim::SimOptions sim;
    sim::EffectsConfig effects;
    sim::SceneConfig scene;
    bool scene_auto_extent = true;
    tdi::TDIConfig tdi;
    bool require_calibration = false;
    int geo_band = 10;   // geolocation-bearing reference channel
    int bbr_ref_band = 7;
    double scene_mean = 5.0;
    double scene_contrast = 0.3;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// The documented key schema (name, type, default, description), one per line.
std::string config_schema_doc();

}  // namespace ocproc::io
