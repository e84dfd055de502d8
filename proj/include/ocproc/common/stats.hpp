#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ocproc/common/error.hpp"

namespace ocproc {

inline double mean_of(std::span<const double> v) {
    if (v.empty()) raise(ErrorKind::domain, "mean of empty range");
    double s = 0;
    for (double x : v) s += x;
    return s / double(v.size());
}

// Sample standard deviation (n-1 denominator).
inline double stddev_of(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / double(v.size() - 1));
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) raise(ErrorKind::domain, "median of empty range");
    std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + n / 2, v.end());
    double hi = v[n / 2];
    if (n % 2) return hi;
    std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
    return 0.5 * (hi + v[n / 2 - 1]);
}

// Two-sided trimmed mean: drops floor(frac*n) smallest and largest values.
inline double trimmed_mean(std::vector<double> v, double frac) {
    if (v.empty()) raise(ErrorKind::domain, "trimmed mean of empty range");
    std::sort(v.begin(), v.end());
    std::size_t k = std::size_t(frac * double(v.size()));
    if (2 * k >= v.size()) k = (v.size() - 1) / 2;
    double s = 0;
    std::size_t n = 0;
    for (std::size_t i = k; i + k < v.size(); ++i, ++n) s += v[i];
    return s / double(n);
}

// Nearest-rank percentile: smallest value with at least p*n observations at
// or below it.
inline double percentile_nearest_rank(std::vector<double> v, double p) {
    if (v.empty()) raise(ErrorKind::domain, "percentile of empty range");
    std::sort(v.begin(), v.end());
    std::size_t rank = std::size_t(std::ceil(p * double(v.size())));
    if (rank == 0) rank = 1;
    if (rank > v.size()) rank = v.size();
    return v[rank - 1];
}

}  // namespace ocproc
