#pragma once

#include <vector>

#include "ocproc/geocal/geolocate.hpp"
#include "ocproc/product.hpp"

namespace ocproc::eval {

struct Region {
    std::size_t row0 = 0, col0 = 0;  // inclusive
    std::size_t row1 = 0, col1 = 0;  // exclusive
};

struct SNREntry {
    int band = 0;
    Mode mode = Mode::lac;
    double mean = 0.0;
    double noise_std = 0.0;  // after linear detrending
    double snr = 0.0;        // infinity for a noiseless region
    std::size_t pixels = 0;
};

// Mean over detrended std of a uniform region. Linear detrending removes
// scene-gradient leakage; a detrended relative std above 5% means the
// region is not uniform and is rejected.
SNREntry measure_snr(const ProductGrid& product, const Region& region, int band);

struct SpectrumReport {
    std::vector<double> image_spectrum;  // radially averaged, 64 bins to Nyquist
    std::vector<double> truth_spectrum;
    std::vector<double> bin_ratio;
    double ratio_low = 0.0;   // [0, 1/3) of the Nyquist radius
    double ratio_mid = 0.0;   // [1/3, 2/3)
    double ratio_high = 0.0;  // [2/3, 1]
};

// Band-limited energy ratios of the image periodogram to the truth
// periodogram (DC excluded).
SpectrumReport power_spectrum_ratio(const Raster& image, const Raster& truth);

struct MultiTemporalReport {
    int band = 0;
    geocal::ErrorStats pixels;
    geocal::ErrorStats meters;
};

// Registration accuracy between two map-projected products of the same
// area on the same grid.
MultiTemporalReport multitemporal_accuracy(const ProductGrid& a, const ProductGrid& b,
                                           int band, const geocal::MatchConfig& cfg = {});

}  // namespace ocproc::eval
