#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ocproc/common/raster.hpp"
#include "ocproc/geom/earth.hpp"

namespace ocproc::sim {

struct PointTarget {
    double lat_deg = 0, lon_deg = 0;
    double sigma_m = 500.0;
    double amplitude = 5.0;  // radiance units added at the peak
};

struct UniformPatch {
    double lat_min = 0, lat_max = 0, lon_min = 0, lon_max = 0;
    double value = 5.0;  // radiance
};

struct BandLevel {
    double mean = 5.0;      // mW cm^-2 um^-1 sr^-1
    double contrast = 0.3;  // texture rms relative to the mean
};

struct SceneConfig {
    std::uint64_t seed = 1;
    double center_lat_deg = 0.0;
    double center_lon_deg = 0.0;
    double extent_along_m = 300e3;    // north-south
    double extent_across_m = 1700e3;  // east-west
    double cell_m = 120.0;            // drives the texture grid resolution
    double spectrum_slope = -2.0;     // radially averaged log-log PSD slope
    bool uniform = false;
    std::map<int, BandLevel> bands = {{1, {}}};
    std::vector<PointTarget> point_targets;
    std::vector<UniformPatch> patches;
};

// Ground radiance truth over a geographic extent. All bands share one
// textured field scaled by per-band mean/contrast, which keeps the bands
// correlated the way real landscapes are. Uniform scenes carry a trivial
// texture, so full-swath calibration scenes stay cheap.
struct Scene {
    std::uint64_t seed = 0;
    double lat_min_deg = 0, lat_max_deg = 0;
    double lon_min_deg = 0, lon_max_deg = 0;
    double dlat_deg = 0;  // texture row step (southward)
    double dlon_deg = 0;  // texture column step (eastward)
    double cell_m = 0;
    Raster texture;  // zero-mean, unit rms
    std::map<int, BandLevel> bands;
    std::vector<PointTarget> point_targets;
    std::vector<UniformPatch> patches;

    bool contains(double lat_deg, double lon_deg) const {
        return lat_deg >= lat_min_deg && lat_deg <= lat_max_deg && lon_deg >= lon_min_deg &&
               lon_deg <= lon_max_deg;
    }
    double texture_at(double lat_deg, double lon_deg) const {
        return texture.sample((lat_max_deg - lat_deg) / dlat_deg,
                              (lon_deg - lon_min_deg) / dlon_deg);
    }
    const BandLevel& band_level(int band) const;
    double radiance(const BandLevel& level, double lat_deg, double lon_deg) const;
    double radiance(int band, double lat_deg, double lon_deg) const {
        return radiance(band_level(band), lat_deg, lon_deg);
    }
};

Scene generate_scene(const SceneConfig& cfg);

}  // namespace ocproc::sim
