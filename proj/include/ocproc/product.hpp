#pragma once

#include <map>
#include <vector>

#include "json.hpp"

#include "ocproc/common/raster.hpp"
#include "ocproc/geom/lcc.hpp"
#include "ocproc/mode.hpp"

namespace ocproc {

// l2b/l2c are reserved in the level enum but not produced.
enum class Level { l1b, l1c, l2b, l2c };

std::string level_name(Level level);
Level level_from_name(const std::string& s);

inline constexpr double kUnfilledValue = -999.0;

namespace quality {
inline constexpr std::uint8_t kUnfilled = 0x1;
inline constexpr std::uint8_t kGeometryError = 0x2;
inline constexpr std::uint8_t kPartialWindow = 0x4;
}  // namespace quality

// Multi-band Level-1 raster with per-pixel geolocation, sample-count and
// quality layers. L1B lives on the virtual-linear grid (per-pixel lat/lon);
// L1C on a regular LCC grid (per-pixel geolocation implied by the grid but
// stored too, so both levels read the same way).
struct ProductGrid {
    Level level = Level::l1b;
    Mode mode = Mode::lac;
    std::vector<int> bands;
    std::size_t scans = 0;
    std::size_t pixels = 0;

    std::map<int, Raster> radiance;  // per band
    Raster lat, lon;                 // degrees; kUnfilledValue where invalid
    CountImage sample_count;         // contributing frames per pixel
    Raster effective_samples;        // (sum w)^2 / sum w^2 per pixel
    MaskImage quality_mask;

    bool has_projection = false;
    geom::LCCProjection projection;
    double grid_x0 = 0.0;  // map x of pixel column 0 center
    double grid_y0 = 0.0;  // map y of scan row 0 center (decreasing south)

    nlohmann::json metadata;

    const Raster& band(int b) const;
    Raster& band(int b);
};

}  // namespace ocproc
