#include "ocproc/rad/radiance.hpp"

#include <algorithm>

namespace ocproc::rad {

double NonlinLookup::operator()(double v) const {
    if (is_identity()) return v;
    std::size_t n = x.size();
    if (v <= x.front())
        return y.front() + (v - x.front()) * (y[1] - y[0]) / (x[1] - x[0]);
    if (v >= x.back())
        return y.back() + (v - x.back()) * (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
    auto it = std::upper_bound(x.begin(), x.end(), v);
    std::size_t i = std::size_t(it - x.begin());
    double w = (v - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + w * (y[i] - y[i - 1]);
}

void NonlinLookup::validate() const {
    if (is_identity()) return;
    if (x.size() != y.size() || x.size() < 2)
        raise(ErrorKind::domain, "nonlinearity lookup needs matching knot vectors (>= 2)");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1] && y[i] > y[i - 1]))
            raise(ErrorKind::domain, "nonlinearity lookup must be strictly increasing");
}

const BandCoeffs& CalibCoeffs::for_band(int band) const {
    auto it = bands.find(band);
    if (it == bands.end())
        raise(ErrorKind::calibration_missing,
              "no count-to-radiance coefficients for band " + std::to_string(band));
    return it->second;
}

void validate_coeffs(const BandCoeffs& c) {
    if (c.c_per_row.empty()) raise(ErrorKind::domain, "missing multiplicative coefficients");
    for (double v : c.c_per_row)
        if (!(v > 0)) raise(ErrorKind::domain, "multiplicative coefficient must be positive");
    c.nonlin.validate();
}

Raster count_to_radiance(const Raster& counts, const std::vector<double>& dark,
                         const BandCoeffs& coeffs) {
    validate_coeffs(coeffs);
    if (!dark.empty() && dark.size() != counts.cols())
        raise(ErrorKind::domain, "dark vector length does not match frame columns");
    Raster out(counts.rows(), counts.cols());
    for (std::size_t r = 0; r < counts.rows(); ++r) {
        double c = coeffs.c_at(r);
        double d = coeffs.d_at(r);
        for (std::size_t j = 0; j < counts.cols(); ++j) {
            double v = counts(r, j) - (dark.empty() ? 0.0 : dark[j]);
            out(r, j) = coeffs.nonlin(v) * c + d;
        }
    }
    return out;
}

}  // namespace ocproc::rad
