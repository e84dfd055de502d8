#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ocproc/rad/frame.hpp"

namespace ocproc::rad {

// Column-wise mean dark profile per band from night imaging, plus the
// readout-port partition of the frame columns. The shielded row transmitted
// with the data covers only dark_width columns; the night-imaging profile
// covers the full frame, so uncovered columns are still estimated (scaled by
// their port factor) and flagged.
struct DarkReference {
    std::map<int, std::vector<double>> profiles;  // per band, length = frame cols
    std::vector<std::size_t> port_edges;          // P+1 boundaries over frame cols
    std::size_t dark_width = 0;                   // columns covered by the shielded row
};

std::vector<std::size_t> equal_port_edges(std::size_t cols, std::size_t ports);

struct DarkEstimate {
    std::vector<double> dark;           // per-column estimate for one frame
    std::vector<std::uint8_t> flags;    // 1 where the shielded row has no coverage
    bool from_fallback = false;         // dark rows borrowed from another frame
};

// Scales the reference profile per port by median(current rows)/median(ref)
// over the covered columns.
DarkEstimate model_dark(const std::vector<std::vector<std::uint16_t>>& dark_rows,
                        const DarkReference& ref, int band);

// Per-frame estimates for a band: rows within the mode's cadence window are
// used; frames without any fall back to the nearest-in-time row (flagged).
std::vector<DarkEstimate> band_dark_estimates(const std::vector<const RawFrame*>& frames,
                                              const DarkReference& ref, int band,
                                              std::size_t cadence);

// counts - dark, negatives preserved.
Raster correct_dark(const Raster& values, const std::vector<double>& dark);
Raster correct_dark(const RawFrame& frame, const std::vector<double>& dark);

// Builds the reference from a night acquisition (column means per band).
DarkReference estimate_dark_reference(const FrameStack& night, std::size_t ports = 4);

}  // namespace ocproc::rad
