#pragma once

#include <map>
#include <vector>

#include "ocproc/rad/frame.hpp"

namespace ocproc::rad {

// Monotone per-band linearization lookup, linear interpolation between
// knots and linear extrapolation at the ends. Default is the identity.
struct NonlinLookup {
    std::vector<double> x;
    std::vector<double> y;

    bool is_identity() const { return x.empty(); }
    double operator()(double v) const;
    void validate() const;
};

struct BandCoeffs {
    std::vector<double> c_per_row;  // multiplicative, radiance per count
    std::vector<double> d_per_row;  // additive, radiance units
    NonlinLookup nonlin;

    double c_at(std::size_t row) const {
        return c_per_row.size() == 1 ? c_per_row[0] : c_per_row.at(row);
    }
    double d_at(std::size_t row) const {
        return d_per_row.size() == 1 ? d_per_row[0] : d_per_row.at(row);
    }
};

struct CalibCoeffs {
    std::map<int, BandCoeffs> bands;

    const BandCoeffs& for_band(int band) const;
};

void validate_coeffs(const BandCoeffs& c);

// L = Nonlin(V - DS) * C + D, per pixel, in working double precision
// (mW cm^-2 um^-1 sr^-1).
Raster count_to_radiance(const Raster& counts, const std::vector<double>& dark,
                         const BandCoeffs& coeffs);

}  // namespace ocproc::rad
