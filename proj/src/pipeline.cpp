#include "ocproc/pipeline.hpp"

#include <sstream>

#include "ocproc/sim/simulate.hpp"

namespace ocproc::pipeline {

using nlohmann::json;

SimulateResult run_simulate(const io::RunConfig& cfg) {
    SimulateResult out;
    sim::SceneConfig sc = cfg.scene;
    if (cfg.scene_auto_extent)
        sc = sim::scene_config_for_acquisition(sc, cfg.orbit, cfg.sensor, cfg.sim);
    out.scene = sim::generate_scene(sc);
    out.sim = sim::simulate_acquisition(out.scene, cfg.orbit, cfg.sensor, cfg.effects, cfg.sim);
    return out;
}

std::vector<rad::FrameData> radiometric_correct(const rad::FrameStack& stack,
                                                const CalibrationSet* calib) {
    rad::validate_stack(stack);
    const ModeTraits& traits = mode_traits(stack.mode);
    rad::CalibCoeffs fallback = sim::default_coeffs(stack.bands);

    std::vector<rad::FrameData> out;
    for (int band : stack.bands) {
        std::vector<const rad::RawFrame*> frames = stack.band_frames(band);

        std::vector<rad::DarkEstimate> dark;
        bool do_dark = calib && calib->dark.profiles.count(band) > 0;
        if (do_dark)
            dark = rad::band_dark_estimates(frames, calib->dark, band, traits.dark_cadence);

        const rad::PRNUEntry* prnu = nullptr;
        if (calib) {
            auto it = calib->prnu.bands.find(band);
            if (it != calib->prnu.bands.end()) prnu = &it->second;
        }

        std::optional<rad::SmearModel> smear;
        if (calib && calib->has_smear) {
            rad::SmearParams p = calib->smear;
            p.mode = stack.mode;
            p.integration_ms = frames.front()->integration_ms;
            smear = rad::build_smear_weights(p);
        }

        const rad::BandCoeffs& coeffs = (calib && calib->coeffs.bands.count(band))
                                            ? calib->coeffs.for_band(band)
                                            : fallback.for_band(band);

        for (std::size_t k = 0; k < frames.size(); ++k) {
            const rad::RawFrame& f = *frames[k];
            Raster values(f.rows(), f.cols());
            for (std::size_t i = 0; i < values.size(); ++i)
                values.values()[i] = double(f.counts.values()[i]);
            if (do_dark) values = rad::correct_dark(values, dark[k].dark);
            if (prnu) values = rad::apply_prnu(values, *prnu);
            if (smear) values = smear->correct(values);
            values = rad::count_to_radiance(values, {}, coeffs);

            rad::FrameData fd;
            fd.band = band;
            fd.mode = f.mode;
            fd.start_time = f.start_time;
            fd.tilt_deg = f.tilt_deg;
            fd.values = std::move(values);
            out.push_back(std::move(fd));
        }
    }
    return out;
}

ProductGrid process_stack(const rad::FrameStack& stack, const CalibrationSet* calib,
                          const io::RunConfig& cfg) {
    if (calib && !calib->sensor_hash.empty() &&
        calib->sensor_hash != io::sensor_hash(stack.sensor))
        raise(ErrorKind::calibration_mismatch,
              "calibration set was built for different sensor geometry");

    std::vector<rad::FrameData> frames = radiometric_correct(stack, calib);
    tdi::ProcessingGeometry geometry(stack, calib);
    ProductGrid grid = tdi::run_tdi(frames, geometry, cfg.tdi);

    std::vector<double> times = stack.frame_times();
    grid.metadata["sensor"] = io::sensor_to_json(stack.sensor);
    grid.metadata["orbit"] = io::orbit_to_json(stack.orbit);
    grid.metadata["sensor_hash"] = io::sensor_hash(stack.sensor);
    grid.metadata["orbit_altitude_m"] = stack.orbit.altitude_m;
    grid.metadata["tilt_deg"] = stack.frames.front().tilt_deg;
    grid.metadata["time_begin"] = times.front();
    grid.metadata["time_end"] = times.back();
    grid.metadata["calibration_version"] = calib ? calib->version : "none";
    return grid;
}

ProductGeometry geometry_from_product(const ProductGrid& product) {
    if (!product.metadata.contains("sensor"))
        raise(ErrorKind::data, "product lacks embedded geometry metadata");
    ProductGeometry g;
    g.sensor = io::sensor_from_json(product.metadata.at("sensor"));
    g.orbit = io::orbit_from_json(product.metadata.at("orbit"));
    g.tilt_deg = product.metadata.at("tilt_deg");
    double t0 = product.metadata.at("time_begin"), t1 = product.metadata.at("time_end");
    g.mid_time = 0.5 * (t0 + t1);
    g.mode = product.mode;
    return g;
}

geocal::ColumnSensitivity product_sensitivity(const ProductGrid& product) {
    if (product.level != Level::l1b)
        raise(ErrorKind::domain, "geometric calibration expects an L1B product");
    ProductGeometry g = geometry_from_product(product);
    geom::SensorGeometry s = g.sensor;
    s.tilt_deg = g.tilt_deg;
    geom::CameraModel cam(s, geom::binned_layout(s, g.mode));
    geom::AttitudeState nominal;
    nominal.epoch_s = g.mid_time;
    geom::CameraPose pose =
        geom::make_pose(geom::propagate_orbit(g.orbit, g.mid_time), nominal);
    return geocal::column_sensitivity(cam, pose, 0.0, product.pixels);
}

namespace {

void poly_add_into(Polynomial& dst, const Polynomial& src) {
    std::vector<double> c = dst.coeffs();
    const std::vector<double>& o = src.coeffs();
    if (o.size() > c.size()) c.resize(o.size(), 0.0);
    for (std::size_t i = 0; i < o.size(); ++i) c[i] += o[i];
    dst = Polynomial(std::move(c));
}

std::string product_id(const ProductGrid& product) {
    std::ostringstream id;
    id << level_name(product.level) << "/" << mode_name(product.mode) << " t=["
       << product.metadata.value("time_begin", 0.0) << ","
       << product.metadata.value("time_end", 0.0) << "]";
    return id.str();
}

}  // namespace

std::string calibrate_bbr_step(CalibrationSet& calib, const ProductGrid& product,
                               int ref_band, const geocal::BBROptions& opt) {
    geocal::ColumnSensitivity sens = product_sensitivity(product);
    geom::FrameLayout layout =
        geom::binned_layout(geometry_from_product(product).sensor, product.mode);
    std::map<int, geocal::BBRProfile> profiles =
        geocal::estimate_bbr(product, sens, layout.col_scale, layout.col_offset, ref_band, opt);

    std::ostringstream rep;
    rep << "band-to-band registration calibration (reference band " << ref_band << ")\n";
    rep << "band  along@edge/ctr/edge [px]   across@edge/ctr/edge [px]   ties\n";
    double c0 = 0, cc = double(product.pixels) / 2, c1 = double(product.pixels - 1);
    for (auto& [band, prof] : profiles) {
        rep << "  " << band << "   " << prof.along(c0) << " / " << prof.along(cc) << " / "
            << prof.along(c1) << "   " << prof.across(c0) << " / " << prof.across(cc)
            << " / " << prof.across(c1) << "   " << prof.tie_points << "\n";
        if (band == ref_band) continue;
        auto it = calib.bbr.find(band);
        if (it == calib.bbr.end()) {
            calib.bbr[band] = prof;
        } else {
            // The product already carried the stored correction; the new
            // profile is the residual, so the angle corrections compose.
            poly_add_into(it->second.pitch_correction, prof.pitch_correction);
            poly_add_into(it->second.roll_correction, prof.roll_correction);
            it->second.along = prof.along;
            it->second.across = prof.across;
            it->second.fit_rms_along = prof.fit_rms_along;
            it->second.fit_rms_across = prof.fit_rms_across;
            it->second.tie_points = prof.tie_points;
        }
    }
    calib.provenance.push_back("bbr: " + product_id(product));
    return rep.str();
}

GeoCalResult calibrate_geo_step(CalibrationSet& calib, const ProductGrid& product,
                                const Raster& reference, int band,
                                const geocal::MatchConfig& match) {
    GeoCalResult out;
    out.assessment = geocal::estimate_geolocation_error(product, reference, band, match);
    geocal::ColumnSensitivity sens = product_sensitivity(product);
    geom::FrameLayout layout =
        geom::binned_layout(geometry_from_product(product).sensor, product.mode);
    out.correction = geocal::calibrate_geolocation(out.assessment.field, sens,
                                                   layout.col_scale, layout.col_offset);
    calib.attitude.roll_bias_rad += out.correction.roll_bias_rad;
    calib.attitude.pitch_bias_rad += out.correction.pitch_bias_rad;
    poly_add_into(calib.attitude.interior_roll, out.correction.interior_roll);
    poly_add_into(calib.attitude.interior_pitch, out.correction.interior_pitch);
    calib.has_attitude = true;
    calib.provenance.push_back("geo: " + product_id(product));
    return out;
}

std::string calibrate_tilt_step(CalibrationSet& calib,
                                const std::vector<std::pair<double, double>>& samples) {
    geocal::TiltDriftModel m = geocal::fit_tilt_drift(samples);
    calib.tilt_drift.slope_rad_per_deg += m.slope_rad_per_deg;
    calib.tilt_drift.intercept_rad += m.intercept_rad;
    calib.tilt_drift.residual_rms_rad = m.residual_rms_rad;
    calib.tilt_drift.point_count = m.point_count;
    calib.has_tilt_drift = true;
    calib.provenance.push_back("tilt-drift fit over " + std::to_string(samples.size()) +
                               " samples");
    std::ostringstream rep;
    rep << "tilt drift model: pitch = " << m.slope_rad_per_deg << " rad/deg * tilt + "
        << m.intercept_rad << " rad (rms " << m.residual_rms_rad << " rad, n="
        << m.point_count << ")\n";
    return rep.str();
}

std::string report_snr(const eval::SNREntry& e) {
    std::ostringstream rep;
    rep << "band " << e.band << " (" << mode_name(e.mode) << "): mean=" << e.mean
        << " noise_std=" << e.noise_std << " snr=" << e.snr << " pixels=" << e.pixels
        << "\n";
    return rep.str();
}

std::string report_geo(const geocal::ErrorStats& stats) {
    std::ostringstream rep;
    rep << "geolocation error (km): samples=" << stats.samples << "\n"
        << "  along : median=" << stats.along.median << " UB=" << stats.along.upper_bound
        << " LB=" << stats.along.lower_bound << " mean=" << stats.along.mean
        << " 3sigma=" << stats.along.three_sigma << "\n"
        << "  across: median=" << stats.across.median << " UB=" << stats.across.upper_bound
        << " LB=" << stats.across.lower_bound << " mean=" << stats.across.mean
        << " 3sigma=" << stats.across.three_sigma << "\n"
        << "  radial: median=" << stats.median_radial << " CE90=" << stats.ce90 << "\n"
        << "  (UB/LB are the 95th/5th percentiles of per-column medians)\n";
    return rep.str();
}

std::string report_spectrum(const eval::SpectrumReport& rep) {
    std::ostringstream out;
    out << "power spectrum ratio to truth: low=" << rep.ratio_low << " mid=" << rep.ratio_mid
        << " high=" << rep.ratio_high << "\n";
    return out.str();
}

CalibrationSet default_calibration(const rad::FrameStack& stack) {
    CalibrationSet c;
    c.sensor_hash = io::sensor_hash(stack.sensor);
    c.coeffs = sim::default_coeffs(stack.bands);
    c.smear.mode = stack.mode;
    c.smear.integration_ms = stack.frames.front().integration_ms;
    return c;
}

}  // namespace ocproc::pipeline
