#include "ocproc/geocal/geolocate.hpp"

#include <algorithm>
#include <cmath>

#include "ocproc/common/stats.hpp"

namespace ocproc::geocal {

double offsets_to_angles(double offset_px, double igfov_ground_m, double altitude_m) {
    if (std::abs(offset_px) >= 100.0)
        raise(ErrorKind::domain, "offset outside the small-angle regime");
    return std::atan(offset_px * igfov_ground_m / altitude_m);
}

double angles_to_offsets(double angle_rad, double igfov_ground_m, double altitude_m) {
    return std::tan(angle_rad) * altitude_m / igfov_ground_m;
}

ColumnSensitivity column_sensitivity(const geom::CameraModel& camera,
                                     const geom::CameraPose& pose, double height_m,
                                     std::size_t product_cols) {
    ColumnSensitivity s;
    s.along_m_per_rad.resize(product_cols);
    s.across_m_per_rad.resize(product_cols);
    double r_mid = 0.5 * double(camera.rows() > 1 ? camera.rows() - 1 : 0);
    double r_hi = camera.rows() > 1 ? r_mid + 0.5 : r_mid;
    double r_lo = camera.rows() > 1 ? r_mid - 0.5 : r_mid;

    const std::size_t step = std::max<std::size_t>(1, product_cols / 64);
    std::vector<std::size_t> nodes;
    for (std::size_t c = 0; c < product_cols; c += step) nodes.push_back(c);
    if (nodes.back() != product_cols - 1) nodes.push_back(product_cols - 1);

    std::vector<double> node_along(nodes.size()), node_across(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double c = double(nodes[i]);
        double c1 = c > 0 ? c - 0.5 : c;
        double c2 = c + 0.5 < double(product_cols) ? c + 0.5 : c;
        geom::Vec3 g_lo = camera.ground_ecef(pose, r_lo, c, height_m);
        geom::Vec3 g_hi = camera.ground_ecef(pose, r_hi, c, height_m);
        double dth_along = std::acos(std::clamp(
            camera.look_pinhole(r_lo, c).dot(camera.look_pinhole(r_hi, c)), -1.0, 1.0));
        if (camera.rows() <= 1) {
            // Single-line layouts have no row extent; fall back to a small
            // synthetic along rotation of the look direction.
            dth_along = 1e-5;
            geom::Vec3 dir = pose.body2ecef * (camera.mount() *
                              (geom::rot_y(dth_along) * camera.look_pinhole(r_mid, c)));
            g_hi = geom::intersect_ellipsoid(pose.position, dir, height_m);
            g_lo = camera.ground_ecef(pose, r_mid, c, height_m);
        }
        node_along[i] = (g_hi - g_lo).norm() / std::max(dth_along, 1e-12);

        geom::Vec3 a_lo = camera.ground_ecef(pose, r_mid, c1, height_m);
        geom::Vec3 a_hi = camera.ground_ecef(pose, r_mid, c2, height_m);
        double dth_across = std::acos(std::clamp(
            camera.look_pinhole(r_mid, c1).dot(camera.look_pinhole(r_mid, c2)), -1.0, 1.0));
        node_across[i] = (a_hi - a_lo).norm() / std::max(dth_across, 1e-12);
    }

    for (std::size_t c = 0; c < product_cols; ++c) {
        double pos = double(c) / double(step);
        std::size_t i0 = std::min(std::size_t(pos), nodes.size() - 2);
        double w = std::clamp(pos - double(i0), 0.0, 1.0);
        s.along_m_per_rad[c] = node_along[i0] * (1 - w) + node_along[i0 + 1] * w;
        s.across_m_per_rad[c] = node_across[i0] * (1 - w) + node_across[i0 + 1] * w;
    }
    return s;
}

namespace {

// Local ground scale (meters per pixel step) from the geolocation layers.
bool local_scales(const ProductGrid& p, std::size_t i, std::size_t j, double& along_m,
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

AxisStats axis_stats(const std::vector<double>& values,
                     const std::vector<double>& columns, std::size_t swath_cols) {
    AxisStats st;
    st.median = median_of(values);
    st.mean = mean_of(values);
    st.three_sigma = 3.0 * stddev_of(values);
    // Across-swath variation: 95th/5th percentiles of per-column-bin medians.
    const std::size_t nbins = 16;
    std::vector<std::vector<double>> bins(nbins);
    for (std::size_t k = 0; k < values.size(); ++k) {
        std::size_t b = std::min(nbins - 1, std::size_t(columns[k] * double(nbins) /
                                                        double(std::max<std::size_t>(swath_cols, 1))));
        bins[b].push_back(values[k]);
    }
    std::vector<double> medians;
    for (auto& b : bins)
        if (!b.empty()) medians.push_back(median_of(b));
    if (!medians.empty()) {
        st.upper_bound = percentile_nearest_rank(medians, 0.95);
        st.lower_bound = percentile_nearest_rank(medians, 0.05);
    }
    return st;
}

}  // namespace

GeolocationAssessment estimate_geolocation_error(const ProductGrid& product,
                                                 const Raster& reference, int band,
                                                 const MatchConfig& cfg) {
    const Raster& img = product.band(band);
    std::vector<TiePoint> ties = dense_match(reference, img, cfg);

    GeolocationAssessment out;
    out.field.swath_cols = product.pixels;
    std::vector<double> along_km, across_km, radial_km, cols;
    for (const TiePoint& t : ties) {
        double am, xm;
        if (!local_scales(product, std::size_t(t.ref_row), std::size_t(t.ref_col), am, xm))
            continue;
        ResidualPoint rp;
        rp.row = t.ref_row;
        rp.col = t.ref_col;
        rp.along_m = t.d_along * am;
        rp.across_m = t.d_across * xm;
        out.field.points.push_back(rp);
        along_km.push_back(rp.along_m / 1000.0);
        across_km.push_back(rp.across_m / 1000.0);
        radial_km.push_back(std::hypot(rp.along_m, rp.across_m) / 1000.0);
        cols.push_back(t.ref_col);
    }
    if (out.field.points.size() < cfg.min_points)
        raise(ErrorKind::insufficient_data, "too few usable residual points");

    out.stats.samples = out.field.points.size();
    out.stats.along = axis_stats(along_km, cols, product.pixels);
    out.stats.across = axis_stats(across_km, cols, product.pixels);
    out.stats.ce90 = ce90(radial_km);
    out.stats.median_radial = median_of(radial_km);
    return out;
}

AttitudeCorrection calibrate_geolocation(const ResidualField& field,
                                         const ColumnSensitivity& sensitivity,
                                         double col_scale, double col_offset) {
    if (field.points.size() < 100)
        raise(ErrorKind::insufficient_data, "need at least 100 residual points");
    double cmin = 1e18, cmax = -1e18;
    for (const ResidualPoint& p : field.points) {
        cmin = std::min(cmin, p.col);
        cmax = std::max(cmax, p.col);
    }
    if ((cmax - cmin) < 0.8 * double(field.swath_cols))
        raise(ErrorKind::insufficient_data, "residual points span less than 80% of the swath");

    std::vector<double> pitch, roll, radial, phys_cols;
    for (const ResidualPoint& p : field.points) {
        std::size_t c = std::size_t(std::clamp(p.col, 0.0,
                                               double(sensitivity.along_m_per_rad.size() - 1)));
        double a = p.along_m / sensitivity.along_m_per_rad[c];
        double x = p.across_m / sensitivity.across_m_per_rad[c];
        pitch.push_back(a);
        roll.push_back(x);
        radial.push_back(std::hypot(a, x));
        phys_cols.push_back(p.col * col_scale + col_offset);
    }
    double med_radial = median_of(radial);
    double spread = stddev_of(radial);
    if (spread > 10.0 * std::max(med_radial, 1e-7))
        raise(ErrorKind::calibration_rejected,
              "residual field inconsistent (spread exceeds 10x the median)");

    AttitudeCorrection corr;
    corr.pitch_bias_rad = median_of(pitch);
    corr.roll_bias_rad = median_of(roll);

    std::vector<double> res_pitch(pitch.size()), res_roll(roll.size());
    for (std::size_t i = 0; i < pitch.size(); ++i) {
        res_pitch[i] = pitch[i] - corr.pitch_bias_rad;
        res_roll[i] = roll[i] - corr.roll_bias_rad;
    }
    corr.interior_pitch = fit_polynomial(phys_cols, res_pitch, 3);
    corr.interior_roll = fit_polynomial(phys_cols, res_roll, 3);
    return corr;
}

double ce90(std::vector<double> radial_errors) {
    if (radial_errors.size() < 10)
        raise(ErrorKind::domain, "CE90 needs at least 10 samples");
    for (double& v : radial_errors) v = std::abs(v);
    return percentile_nearest_rank(std::move(radial_errors), 0.9);
}

std::map<int, BBRStatsEntry> bbr_stats(const std::vector<std::vector<BBRSample>>& per_product) {
    if (per_product.size() < 2)
        raise(ErrorKind::insufficient_data, "bbr_stats needs at least 2 products");
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> pooled;
    for (const auto& product : per_product)
        for (const BBRSample& s : product) {
            pooled[s.band].first.push_back(s.along_px);
            pooled[s.band].second.push_back(s.across_px);
        }
    std::map<int, BBRStatsEntry> out;
    for (auto& [band, v] : pooled) {
        BBRStatsEntry e;
        e.along_mean = mean_of(v.first);
        e.along_3sigma = 3.0 * stddev_of(v.first);
        e.across_mean = mean_of(v.second);
        e.across_3sigma = 3.0 * stddev_of(v.second);
        e.products = v.first.size();
        out[band] = e;
    }
    return out;
}

}  // namespace ocproc::geocal
