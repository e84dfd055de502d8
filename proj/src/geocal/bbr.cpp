#include "ocproc/geocal/bbr.hpp"

#include <cmath>

#include "ocproc/common/stats.hpp"

namespace ocproc::geocal {

namespace {

bool product_scales(const ProductGrid& p, std::size_t i, std::size_t j, double& along_m,
                    double& across_m) {
    auto pt = [&](std::size_t r, std::size_t c) -> std::optional<geom::Vec3> {
        double lat = p.lat(r, c), lon = p.lon(r, c);
        if (lat == kUnfilledValue) return std::nullopt;
        return geom::ecef_from_geodetic(geom::GroundPoint{lat, lon, 0.0});
    };
    std::size_t i1 = i + 1 < p.scans ? i + 1 : i - 1;
    std::size_t j1 = j + 1 < p.pixels ? j + 1 : j - 1;
    auto g0 = pt(i, j), gi = pt(i1, j), gj = pt(i, j1);
    if (!g0 || !gi || !gj) return false;
    along_m = (*gi - *g0).norm();
    across_m = (*gj - *g0).norm();
    return along_m > 0 && across_m > 0;
}

}  // namespace

std::map<int, BBRProfile> estimate_bbr(const ProductGrid& product,
                                       const ColumnSensitivity& sensitivity,
                                       double col_scale, double col_offset, int ref_band,
                                       const BBROptions& opt) {
    const Raster& ref = product.band(ref_band);

    std::map<int, BBRProfile> out;
    for (int band : product.bands) {
        BBRProfile prof;
        prof.band = band;
        if (band == ref_band) {
            out[band] = prof;  // identically zero by definition
            continue;
        }
        std::vector<TiePoint> ties = dense_match(ref, product.band(band), opt.match);
        prof.tie_points = ties.size();

        // Field-of-view bins: robust per-bin offsets, empty bins filled from
        // their neighbors (flagged).
        std::vector<std::vector<double>> bin_along(opt.bins), bin_across(opt.bins);
        std::vector<std::vector<double>> bin_am(opt.bins), bin_xm(opt.bins);
        for (const TiePoint& t : ties) {
            std::size_t b = std::min(opt.bins - 1,
                                     std::size_t(t.ref_col * double(opt.bins) /
                                                 double(product.pixels)));
            double am, xm;
            if (!product_scales(product, std::size_t(t.ref_row), std::size_t(t.ref_col), am,
                                xm))
                continue;
            bin_along[b].push_back(t.d_along);
            bin_across[b].push_back(t.d_across);
            bin_am[b].push_back(am);
            bin_xm[b].push_back(xm);
        }
        std::vector<double> centers(opt.bins), v_along(opt.bins), v_across(opt.bins);
        std::vector<double> s_am(opt.bins), s_xm(opt.bins);
        prof.bin_interpolated.assign(opt.bins, 0);
        for (std::size_t b = 0; b < opt.bins; ++b) {
            centers[b] = (double(b) + 0.5) * double(product.pixels) / double(opt.bins);
            if (bin_along[b].size() >= 3) {
                v_along[b] = median_of(bin_along[b]);
                v_across[b] = median_of(bin_across[b]);
                s_am[b] = median_of(bin_am[b]);
                s_xm[b] = median_of(bin_xm[b]);
            } else {
                prof.bin_interpolated[b] = 1;
            }
        }
        // Fill flagged bins from the nearest valid neighbors.
        for (std::size_t b = 0; b < opt.bins; ++b) {
            if (!prof.bin_interpolated[b]) continue;
            long left = -1, right = -1;
            for (long k = long(b) - 1; k >= 0; --k)
                if (!prof.bin_interpolated[std::size_t(k)]) { left = k; break; }
            for (long k = long(b) + 1; k < long(opt.bins); ++k)
                if (!prof.bin_interpolated[std::size_t(k)]) { right = k; break; }
            if (left < 0 && right < 0)
                raise(ErrorKind::insufficient_data, "no usable field-of-view bins");
            if (left < 0) left = right;
            if (right < 0) right = left;
            double w = (right == left)
                           ? 0.0
                           : (double(b) - double(left)) / double(right - left);
            auto lerp = [&](const std::vector<double>& v) {
                return v[std::size_t(left)] * (1 - w) + v[std::size_t(right)] * w;
            };
            v_along[b] = lerp(v_along);
            v_across[b] = lerp(v_across);
            s_am[b] = lerp(s_am);
            s_xm[b] = lerp(s_xm);
        }

        prof.along = fit_polynomial(centers, v_along, opt.poly_degree);
        prof.across = fit_polynomial(centers, v_across, opt.poly_degree);
        double ss_a = 0, ss_x = 0;
        for (std::size_t b = 0; b < opt.bins; ++b) {
            double ra = v_along[b] - prof.along(centers[b]);
            double rx = v_across[b] - prof.across(centers[b]);
            ss_a += ra * ra;
            ss_x += rx * rx;
        }
        prof.fit_rms_along = std::sqrt(ss_a / double(opt.bins));
        prof.fit_rms_across = std::sqrt(ss_x / double(opt.bins));

        // Look-angle corrections: the measured content shift is
        // reality - model with opposite sign, so the model correction that
        // the processing geometry adds is the negated measured angle.
        std::vector<double> phys(opt.bins), ang_along(opt.bins), ang_across(opt.bins);
        for (std::size_t b = 0; b < opt.bins; ++b) {
            std::size_t c = std::min(std::size_t(centers[b]),
                                     sensitivity.along_m_per_rad.size() - 1);
            phys[b] = centers[b] * col_scale + col_offset;
            ang_along[b] = -(v_along[b] * s_am[b]) / sensitivity.along_m_per_rad[c];
            ang_across[b] = -(v_across[b] * s_xm[b]) / sensitivity.across_m_per_rad[c];
        }
        prof.pitch_correction = fit_polynomial(phys, ang_along, opt.poly_degree);
        prof.roll_correction = fit_polynomial(phys, ang_across, opt.poly_degree);
        out[band] = prof;
    }
    return out;
}

}  // namespace ocproc::geocal
