#pragma once

#include <map>

#include "ocproc/geocal/geolocate.hpp"

namespace ocproc::geocal {

struct BBROptions {
    MatchConfig match{32, 15, 6, 0.8, 10};
    std::size_t bins = 16;        // field-of-view bins across the swath
    std::size_t poly_degree = 3;  // per-axis profile polynomial
};

// Band-to-band registration profiles relative to the reference band: per
// column offsets of each band's content, fit as cubic polynomials, plus the
// derived look-angle corrections the processing geometry applies.
// col_scale/col_offset map product columns onto physical detector columns.
std::map<int, BBRProfile> estimate_bbr(const ProductGrid& product,
                                       const ColumnSensitivity& sensitivity,
                                       double col_scale, double col_offset, int ref_band = 7,
                                       const BBROptions& opt = {});

}  // namespace ocproc::geocal
