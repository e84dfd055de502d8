#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ocproc/rad/frame.hpp"

namespace ocproc::rad {

struct PRNUEntry {
    std::vector<double> gains;           // relative gain per column, band mean 1
    std::vector<std::uint8_t> dead_mask; // 1 where the column had no response
};

struct PRNUTable {
    std::map<int, PRNUEntry> bands;
};

struct PRNUOptions {
    std::size_t min_scenes = 50;
    double trim_fraction = 0.10;  // two-sided
};

// Relative gains from a stack of dark-corrected, radiometrically diverse
// scenes: grand mean of trimmed column means over the trimmed mean of each
// column, renormalized to band mean 1. Dead columns get gain 1 and a mask.
PRNUEntry estimate_prnu(const std::vector<const Raster*>& scenes, const PRNUOptions& opt = {});

Raster apply_prnu(const Raster& values, const PRNUEntry& entry);
// Band-checked variant used by the pipeline.
Raster apply_prnu(const FrameData& frame, const PRNUTable& table);

}  // namespace ocproc::rad
