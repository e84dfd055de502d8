#include "ocproc/eval/eval.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "ocproc/common/stats.hpp"

namespace ocproc::eval {

SNREntry measure_snr(const ProductGrid& product, const Region& region, int band) {
    const Raster& img = product.band(band);
    if (region.row1 > product.scans || region.col1 > product.pixels ||
        region.row0 >= region.row1 || region.col0 >= region.col1)
        raise(ErrorKind::domain, "SNR region outside the product");

    std::vector<double> v, rr, cc;
    for (std::size_t i = region.row0; i < region.row1; ++i)
        for (std::size_t j = region.col0; j < region.col1; ++j) {
            double x = img(i, j);
            if (x <= kUnfilledValue + 1.0) continue;
            v.push_back(x);
            rr.push_back(double(i));
            cc.push_back(double(j));
        }
    if (v.size() < 100)
        raise(ErrorKind::invalid_region, "SNR region has fewer than 100 filled pixels");

    // Linear detrend: v ~ a + b*row + c*col.
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (std::size_t k = 0; k < v.size(); ++k) {
        Eigen::Vector3d row(1.0, rr[k], cc[k]);
        ata += row * row.transpose();
        atb += row * v[k];
    }
    Eigen::Vector3d coef = ata.ldlt().solve(atb);
    double ss = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        double r = v[k] - (coef(0) + coef(1) * rr[k] + coef(2) * cc[k]);
        ss += r * r;
    }
    double det_std = std::sqrt(ss / double(v.size() - 1));
    double mean = mean_of(v);

    if (mean != 0.0 && det_std / std::abs(mean) > 0.05)
        raise(ErrorKind::invalid_region, "region not uniform (detrended std above 5%)");

    SNREntry e;
    e.band = band;
    e.mode = product.mode;
    e.mean = mean;
    e.noise_std = det_std;
    e.pixels = v.size();
    e.snr = det_std > 0 ? mean / det_std : std::numeric_limits<double>::infinity();
    return e;
}

namespace {

std::vector<std::complex<double>> periodogram(const Raster& img) {
    using Cplx = std::complex<double>;
    std::size_t rows = img.rows(), cols = img.cols();
    std::vector<Cplx> f(rows * cols);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = Cplx(img.values()[i], 0.0);

    Eigen::FFT<double> fft;
    std::vector<Cplx> in(cols), out(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        std::copy(f.begin() + long(r * cols), f.begin() + long((r + 1) * cols), in.begin());
        fft.fwd(out, in);
        std::copy(out.begin(), out.end(), f.begin() + long(r * cols));
    }
    std::vector<Cplx> cin(rows), cout_v(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) cin[r] = f[r * cols + c];
        fft.fwd(cout_v, cin);
        for (std::size_t r = 0; r < rows; ++r) f[r * cols + c] = cout_v[r];
    }
    return f;
}

}  // namespace

SpectrumReport power_spectrum_ratio(const Raster& image, const Raster& truth) {
    if (!image.same_shape(truth))
        raise(ErrorKind::domain, "spectrum comparison requires equal image sizes");
    std::size_t rows = image.rows(), cols = image.cols();
    auto fi = periodogram(image);
    auto ft = periodogram(truth);

    const std::size_t nbins = 64;
    SpectrumReport rep;
    rep.image_spectrum.assign(nbins, 0.0);
    rep.truth_spectrum.assign(nbins, 0.0);
    std::vector<std::size_t> counts(nbins, 0);

    double e_img[3] = {0, 0, 0}, e_tru[3] = {0, 0, 0};
    for (std::size_t r = 0; r < rows; ++r) {
        double fr = double(std::min(r, rows - r)) / double(rows);
        for (std::size_t c = 0; c < cols; ++c) {
            if (r == 0 && c == 0) continue;  // DC carries only the mean
            double fc = double(std::min(c, cols - c)) / double(cols);
            double f = std::sqrt(fr * fr + fc * fc);
            if (f > 0.5) continue;  // beyond the Nyquist radius
            double pi_v = std::norm(fi[r * cols + c]);
            double pt_v = std::norm(ft[r * cols + c]);
            std::size_t bin = std::min(nbins - 1, std::size_t(f / 0.5 * double(nbins)));
            rep.image_spectrum[bin] += pi_v;
            rep.truth_spectrum[bin] += pt_v;
            ++counts[bin];
            int third = std::min(2, int(f / 0.5 * 3.0));
            e_img[third] += pi_v;
            e_tru[third] += pt_v;
        }
    }
    rep.bin_ratio.assign(nbins, 0.0);
    for (std::size_t b = 0; b < nbins; ++b) {
        if (counts[b]) {
            rep.image_spectrum[b] /= double(counts[b]);
            rep.truth_spectrum[b] /= double(counts[b]);
        }
        rep.bin_ratio[b] =
            rep.truth_spectrum[b] > 0 ? rep.image_spectrum[b] / rep.truth_spectrum[b] : 0.0;
    }
    rep.ratio_low = e_tru[0] > 0 ? e_img[0] / e_tru[0] : 0.0;
    rep.ratio_mid = e_tru[1] > 0 ? e_img[1] / e_tru[1] : 0.0;
    rep.ratio_high = e_tru[2] > 0 ? e_img[2] / e_tru[2] : 0.0;
    return rep;
}

MultiTemporalReport multitemporal_accuracy(const ProductGrid& a, const ProductGrid& b,
                                           int band, const geocal::MatchConfig& cfg) {
    if (!a.has_projection || !b.has_projection)
        raise(ErrorKind::domain, "multi-temporal accuracy needs map-projected products");
    bool same_grid = a.scans == b.scans && a.pixels == b.pixels &&
                     std::abs(a.grid_x0 - b.grid_x0) < 1e-6 &&
                     std::abs(a.grid_y0 - b.grid_y0) < 1e-6 &&
                     a.projection.pixel_size_m == b.projection.pixel_size_m;
    if (!same_grid) raise(ErrorKind::domain, "products are not on the same projection grid");

    std::vector<geocal::TiePoint> ties = geocal::dense_match(a.band(band), b.band(band), cfg);

    std::vector<double> along_px, across_px, radial_px, cols;
    for (const geocal::TiePoint& t : ties) {
        along_px.push_back(t.d_along);
        across_px.push_back(t.d_across);
        radial_px.push_back(std::hypot(t.d_along, t.d_across));
        cols.push_back(t.ref_col);
    }

    auto build = [&](double scale) {
        geocal::ErrorStats st;
        st.samples = ties.size();
        auto scaled = [&](const std::vector<double>& v) {
            std::vector<double> s(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i] * scale;
            return s;
        };
        std::vector<double> al = scaled(along_px), ac = scaled(across_px),
                            ra = scaled(radial_px);
        st.along.median = median_of(al);
        st.along.mean = mean_of(al);
        st.along.three_sigma = 3.0 * stddev_of(al);
        st.across.median = median_of(ac);
        st.across.mean = mean_of(ac);
        st.across.three_sigma = 3.0 * stddev_of(ac);
        st.ce90 = geocal::ce90(ra);
        st.median_radial = median_of(ra);
        return st;
    };

    MultiTemporalReport rep;
    rep.band = band;
    rep.pixels = build(1.0);
    rep.meters = build(a.projection.pixel_size_m);
    return rep;
}

}  // namespace ocproc::eval
