#pragma once

#include <cstddef>
#include <string>

#include "ocproc/common/error.hpp"

namespace ocproc {

enum class Mode { lac, gac };

// Per-mode acquisition constants. Frames arrive onboard-binned: LAC pairs
// adjacent detector rows (48 -> 24), GAC bins 6 rows and 2 columns
// (48x4000 -> 8x2000).
struct ModeTraits {
    std::size_t frame_rows;
    std::size_t frame_cols;
    std::size_t row_binning;
    std::size_t col_binning;
    std::size_t base_scans;   // output scans contributed by a single frame
    unsigned bit_depth;       // radiometric resolution of the counts
    double frame_period_s;    // nominal cadence; see sim defaults
    std::size_t dark_cadence; // one shielded row transmitted every N frames
    std::size_t dark_width;   // columns covered by the shielded row
};

inline const ModeTraits& mode_traits(Mode m) {
    // Nominal frame periods place the per-feature frame overlap inside the
    // observed envelopes (18-23 for LAC, 5-7 for GAC) across the swath.
    static const ModeTraits lac{24, 4000, 2, 1, 47, 12, 0.1280, 4, 3824};
    static const ModeTraits gac{8, 2000, 6, 2, 13, 16, 0.4500, 12, 1912};
    return m == Mode::lac ? lac : gac;
}

inline std::string mode_name(Mode m) { return m == Mode::lac ? "lac" : "gac"; }

inline Mode mode_from_name(const std::string& s) {
    if (s == "lac" || s == "LAC") return Mode::lac;
    if (s == "gac" || s == "GAC") return Mode::gac;
    raise(ErrorKind::config, "unknown mode '" + s + "' (expected lac or gac)");
}

inline std::size_t num_scans_for(Mode m, std::size_t total_raw_frames) {
    if (total_raw_frames == 0) raise(ErrorKind::domain, "num_scans of an empty stack");
    return mode_traits(m).base_scans + 2 * (total_raw_frames - 1);
}

}  // namespace ocproc
