#pragma once

#include <vector>

#include "ocproc/common/raster.hpp"
#include "ocproc/geocal/types.hpp"

namespace ocproc::geocal {

struct MatchConfig {
    std::size_t grid_spacing = 32;
    std::size_t patch = 15;          // odd, >= 9
    std::size_t search_radius = 8;   // pixels
    double score_threshold = 0.8;
    std::size_t min_points = 10;
};

// Normalized cross-correlation over a node grid with parabolic sub-pixel
// refinement. Nodes with flat reference texture, sentinel-masked pixels or a
// correlation peak on the search border are dropped. Throws
// insufficient_data when fewer than min_points survive.
std::vector<TiePoint> dense_match(const Raster& reference, const Raster& target,
                                  const MatchConfig& cfg = {});

}  // namespace ocproc::geocal
