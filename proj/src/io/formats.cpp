#include "ocproc/io/formats.hpp"

#include <cstring>
#include <fstream>

#include "ocproc/io/container.hpp"

namespace ocproc::io {

using nlohmann::json;

namespace {

json poly_to_json(const Polynomial& p) { return json(p.coeffs()); }
Polynomial poly_from_json(const json& j) {
    return Polynomial(j.get<std::vector<double>>());
}

template <class T>
std::vector<std::uint8_t> pack(const std::vector<T>& v) {
    std::vector<std::uint8_t> out(v.size() * sizeof(T));
    std::memcpy(out.data(), v.data(), out.size());
    return out;
}

std::vector<float> quantize_f32(const std::vector<double>& v) {
    std::vector<float> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = float(v[i]);
    return out;
}

}  // namespace

json sensor_to_json(const geom::SensorGeometry& s) {
    json j;
    j["focal_length_mm"] = s.focal_length_mm;
    j["pixel_pitch_um"] = s.pixel_pitch_um;
    j["active_cols"] = s.active_cols;
    j["active_rows"] = s.active_rows;
    j["tilt_deg"] = s.tilt_deg;
    j["alignment_rad"] = {s.alignment_rad[0], s.alignment_rad[1], s.alignment_rad[2]};
    j["distortion_along"] = poly_to_json(s.distortion_along);
    j["distortion_across"] = poly_to_json(s.distortion_across);
    j["interior_along"] = poly_to_json(s.interior_along);
    j["interior_across"] = poly_to_json(s.interior_across);
    return j;
}

geom::SensorGeometry sensor_from_json(const json& j) {
    geom::SensorGeometry s;
    s.focal_length_mm = j.at("focal_length_mm");
    s.pixel_pitch_um = j.at("pixel_pitch_um");
    s.active_cols = j.at("active_cols");
    s.active_rows = j.at("active_rows");
    s.tilt_deg = j.at("tilt_deg");
    for (int i = 0; i < 3; ++i) s.alignment_rad[i] = j.at("alignment_rad")[i];
    s.distortion_along = poly_from_json(j.at("distortion_along"));
    s.distortion_across = poly_from_json(j.at("distortion_across"));
    s.interior_along = poly_from_json(j.at("interior_along"));
    s.interior_across = poly_from_json(j.at("interior_across"));
    return s;
}

json orbit_to_json(const geom::OrbitElements& el) {
    json j;
    j["altitude_m"] = el.altitude_m;
    j["inclination_deg"] = el.inclination_deg;
    j["node_lon_deg"] = el.node_lon_deg;
    j["arg_lat0_deg"] = el.arg_lat0_deg;
    j["epoch_s"] = el.epoch_s;
    return j;
}

geom::OrbitElements orbit_from_json(const json& j) {
    geom::OrbitElements el;
    el.altitude_m = j.at("altitude_m");
    el.inclination_deg = j.at("inclination_deg");
    el.node_lon_deg = j.at("node_lon_deg");
    el.arg_lat0_deg = j.at("arg_lat0_deg");
    el.epoch_s = j.at("epoch_s");
    return el;
}

std::string sensor_hash(const geom::SensorGeometry& s) {
    std::string repr = sensor_to_json(s).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : repr) {
        h ^= std::uint8_t(c);
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

// --------------------------------------------------------------------------
// Frames

void write_frames(const std::string& path, const rad::FrameStack& stack) {
    json meta;
    meta["container"] = "frames";
    meta["mode"] = mode_name(stack.mode);
    meta["bands"] = stack.bands;
    meta["frame_period_s"] = stack.frame_period_s;
    meta["sensor"] = sensor_to_json(stack.sensor);
    meta["orbit"] = orbit_to_json(stack.orbit);
    json att = json::array();
    for (const geom::AttitudeState& a : stack.attitude.samples()) {
        att.push_back({{"t", a.epoch_s},
                       {"roll", a.roll_rad},
                       {"pitch", a.pitch_rad},
                       {"yaw", a.yaw_rad}});
    }
    meta["attitude"] = att;
    meta["frame_count"] = stack.frames.size();

    SectionWriter w;
    w.add_string("meta", meta.dump());

    std::vector<std::uint8_t> blob;
    auto put_f64 = [&](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        for (int i = 0; i < 8; ++i) blob.push_back(std::uint8_t(bits >> (8 * i)));
    };
    auto put_u32 = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) blob.push_back(std::uint8_t(v >> (8 * i)));
    };
    for (const rad::RawFrame& f : stack.frames) {
        put_u32(std::uint32_t(f.band));
        put_u32(f.mode == Mode::lac ? 0u : 1u);
        put_f64(f.start_time);
        put_f64(f.tilt_deg);
        put_f64(f.integration_ms);
        put_u32(std::uint32_t(f.rows()));
        put_u32(std::uint32_t(f.cols()));
        put_u32(std::uint32_t(f.dark_row.size()));
        const std::uint8_t* counts =
            reinterpret_cast<const std::uint8_t*>(f.counts.values().data());
        blob.insert(blob.end(), counts, counts + f.counts.size() * 2);
        const std::uint8_t* dark = reinterpret_cast<const std::uint8_t*>(f.dark_row.data());
        blob.insert(blob.end(), dark, dark + f.dark_row.size() * 2);
    }
    w.add("frames", blob.data(), blob.size());
    w.save(path);
}

rad::FrameStack read_frames(const std::string& path) {
    SectionReader r = SectionReader::load(path);
    json meta = json::parse(r.get_string("meta"));
    if (meta.value("container", "") != "frames")
        raise(ErrorKind::format, "'" + path + "' is not a frames container");

    rad::FrameStack stack;
    stack.mode = mode_from_name(meta.at("mode"));
    stack.bands = meta.at("bands").get<std::vector<int>>();
    stack.frame_period_s = meta.at("frame_period_s");
    stack.sensor = sensor_from_json(meta.at("sensor"));
    stack.orbit = orbit_from_json(meta.at("orbit"));
    std::vector<geom::AttitudeState> att;
    for (const json& a : meta.at("attitude")) {
        geom::AttitudeState st;
        st.epoch_s = a.at("t");
        st.roll_rad = a.at("roll");
        st.pitch_rad = a.at("pitch");
        st.yaw_rad = a.at("yaw");
        att.push_back(st);
    }
    stack.attitude = geom::AttitudeTimeline(std::move(att));

    const std::vector<std::uint8_t>& blob = r.get("frames");
    std::size_t pos = 0;
    auto need = [&](std::size_t n) {
        if (pos + n > blob.size()) raise(ErrorKind::format, "truncated frames payload");
    };
    auto get_u32 = [&]() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(blob[pos + i]) << (8 * i);
        pos += 4;
        return v;
    };
    auto get_f64 = [&]() {
        need(8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= std::uint64_t(blob[pos + i]) << (8 * i);
        pos += 8;
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    };
    std::size_t n_frames = meta.at("frame_count");
    for (std::size_t k = 0; k < n_frames; ++k) {
        rad::RawFrame f;
        f.band = int(get_u32());
        f.mode = get_u32() == 0 ? Mode::lac : Mode::gac;
        f.start_time = get_f64();
        f.tilt_deg = get_f64();
        f.integration_ms = get_f64();
        std::uint32_t rows = get_u32(), cols = get_u32(), dark_len = get_u32();
        f.counts = CountImage(rows, cols);
        need(std::size_t(rows) * cols * 2);
        std::memcpy(f.counts.values().data(), blob.data() + pos, std::size_t(rows) * cols * 2);
        pos += std::size_t(rows) * cols * 2;
        f.dark_row.resize(dark_len);
        need(std::size_t(dark_len) * 2);
        std::memcpy(f.dark_row.data(), blob.data() + pos, std::size_t(dark_len) * 2);
        pos += std::size_t(dark_len) * 2;
        stack.frames.push_back(std::move(f));
    }
    return stack;
}

// --------------------------------------------------------------------------
// Products

void write_product(const std::string& path, const ProductGrid& grid) {
    json meta = grid.metadata;
    meta["container"] = "product";
    meta["level"] = level_name(grid.level);
    meta["mode"] = mode_name(grid.mode);
    meta["bands"] = grid.bands;
    meta["scans"] = grid.scans;
    meta["pixels"] = grid.pixels;
    meta["has_projection"] = grid.has_projection;
    if (grid.has_projection) {
        meta["projection"] = {{"lat1_deg", grid.projection.lat1_deg},
                              {"lat2_deg", grid.projection.lat2_deg},
                              {"lat0_deg", grid.projection.lat0_deg},
                              {"lon0_deg", grid.projection.lon0_deg},
                              {"false_easting_m", grid.projection.false_easting_m},
                              {"false_northing_m", grid.projection.false_northing_m},
                              {"pixel_size_m", grid.projection.pixel_size_m}};
        meta["grid_x0"] = grid.grid_x0;
        meta["grid_y0"] = grid.grid_y0;
    }

    SectionWriter w;
    w.add_string("meta", meta.dump());
    for (int b : grid.bands)
        w.add_vector("band_" + std::to_string(b), quantize_f32(grid.band(b).values()));
    w.add_vector("lat", grid.lat.values());
    w.add_vector("lon", grid.lon.values());
    w.add_vector("sample_count", grid.sample_count.values());
    w.add_vector("effective_samples", quantize_f32(grid.effective_samples.values()));
    w.add_vector("quality", grid.quality_mask.values());
    w.save(path);
}

ProductGrid read_product(const std::string& path) {
    SectionReader r = SectionReader::load(path);
    json meta = json::parse(r.get_string("meta"));
    if (meta.value("container", "") != "product")
        raise(ErrorKind::format, "'" + path + "' is not a product container");

    ProductGrid g;
    g.level = level_from_name(meta.at("level"));
    g.mode = mode_from_name(meta.at("mode"));
    g.bands = meta.at("bands").get<std::vector<int>>();
    g.scans = meta.at("scans");
    g.pixels = meta.at("pixels");
    g.has_projection = meta.at("has_projection");
    if (g.has_projection) {
        const json& p = meta.at("projection");
        g.projection.lat1_deg = p.at("lat1_deg");
        g.projection.lat2_deg = p.at("lat2_deg");
        g.projection.lat0_deg = p.at("lat0_deg");
        g.projection.lon0_deg = p.at("lon0_deg");
        g.projection.false_easting_m = p.at("false_easting_m");
        g.projection.false_northing_m = p.at("false_northing_m");
        g.projection.pixel_size_m = p.at("pixel_size_m");
        g.grid_x0 = meta.at("grid_x0");
        g.grid_y0 = meta.at("grid_y0");
    }
    meta.erase("container");
    g.metadata = meta;

    std::size_t n = g.scans * g.pixels;
    auto load_f32 = [&](const std::string& name) {
        std::vector<float> v = r.get_vector<float>(name);
        if (v.size() != n) raise(ErrorKind::format, "layer '" + name + "' has wrong size");
        Raster out(g.scans, g.pixels);
        for (std::size_t i = 0; i < n; ++i) out.values()[i] = double(v[i]);
        return out;
    };
    auto load_f64 = [&](const std::string& name) {
        std::vector<double> v = r.get_vector<double>(name);
        if (v.size() != n) raise(ErrorKind::format, "layer '" + name + "' has wrong size");
        Raster out(g.scans, g.pixels);
        out.values() = std::move(v);
        return out;
    };
    for (int b : g.bands) g.radiance[b] = load_f32("band_" + std::to_string(b));
    g.lat = load_f64("lat");
    g.lon = load_f64("lon");
    std::vector<std::uint16_t> counts = r.get_vector<std::uint16_t>("sample_count");
    if (counts.size() != n) raise(ErrorKind::format, "sample_count layer has wrong size");
    g.sample_count = CountImage(g.scans, g.pixels);
    g.sample_count.values() = std::move(counts);
    g.effective_samples = load_f32("effective_samples");
    std::vector<std::uint8_t> q = r.get_vector<std::uint8_t>("quality");
    if (q.size() != n) raise(ErrorKind::format, "quality layer has wrong size");
    g.quality_mask = MaskImage(g.scans, g.pixels);
    g.quality_mask.values() = std::move(q);
    return g;
}

// --------------------------------------------------------------------------
// Calibration set

void write_calibration(const std::string& path, const CalibrationSet& calib) {
    json meta;
    meta["container"] = "calibration";
    meta["version"] = calib.version;
    meta["sensor_hash"] = calib.sensor_hash;
    meta["provenance"] = calib.provenance;
    meta["dark_width"] = calib.dark.dark_width;
    meta["port_edges"] = calib.dark.port_edges;
    meta["smear"] = {{"mode", mode_name(calib.smear.mode)},
                     {"row_transfer_us", calib.smear.row_transfer_us},
                     {"total_detector_rows", calib.smear.total_detector_rows},
                     {"integration_ms", calib.smear.integration_ms}};
    meta["has_smear"] = calib.has_smear;
    meta["has_attitude"] = calib.has_attitude;
    if (calib.has_attitude) {
        meta["attitude"] = {{"roll_bias_rad", calib.attitude.roll_bias_rad},
                            {"pitch_bias_rad", calib.attitude.pitch_bias_rad},
                            {"interior_roll", poly_to_json(calib.attitude.interior_roll)},
                            {"interior_pitch", poly_to_json(calib.attitude.interior_pitch)}};
    }
    meta["has_tilt_drift"] = calib.has_tilt_drift;
    if (calib.has_tilt_drift) {
        meta["tilt_drift"] = {{"slope_rad_per_deg", calib.tilt_drift.slope_rad_per_deg},
                              {"intercept_rad", calib.tilt_drift.intercept_rad},
                              {"residual_rms_rad", calib.tilt_drift.residual_rms_rad},
                              {"point_count", calib.tilt_drift.point_count}};
    }
    json bbr = json::object();
    for (const auto& [band, prof] : calib.bbr) {
        bbr[std::to_string(band)] = {{"along", poly_to_json(prof.along)},
                                     {"across", poly_to_json(prof.across)},
                                     {"fit_rms_along", prof.fit_rms_along},
                                     {"fit_rms_across", prof.fit_rms_across},
                                     {"tie_points", prof.tie_points},
                                     {"pitch_correction", poly_to_json(prof.pitch_correction)},
                                     {"roll_correction", poly_to_json(prof.roll_correction)}};
    }
    meta["bbr"] = bbr;
    json coeffs = json::object();
    for (const auto& [band, bc] : calib.coeffs.bands) {
        coeffs[std::to_string(band)] = {{"c_per_row", bc.c_per_row},
                                        {"d_per_row", bc.d_per_row},
                                        {"nonlin_x", bc.nonlin.x},
                                        {"nonlin_y", bc.nonlin.y}};
    }
    meta["coeffs"] = coeffs;

    SectionWriter w;
    w.add_string("meta", meta.dump());
    for (const auto& [band, profile] : calib.dark.profiles)
        w.add_vector("dark_" + std::to_string(band), profile);
    for (const auto& [band, entry] : calib.prnu.bands) {
        w.add_vector("prnu_" + std::to_string(band), entry.gains);
        w.add_vector("prnumask_" + std::to_string(band), entry.dead_mask);
    }
    w.save(path);

    // Text metadata sidecar for quick inspection.
    std::ofstream side(path + ".meta.txt");
    side << "ocproc calibration set\n"
         << "version: " << calib.version << "\n"
         << "sensor_hash: " << calib.sensor_hash << "\n"
         << "dark bands: " << calib.dark.profiles.size() << "\n"
         << "prnu bands: " << calib.prnu.bands.size() << "\n"
         << "bbr bands: " << calib.bbr.size() << "\n"
         << "attitude correction: " << (calib.has_attitude ? "yes" : "no") << "\n"
         << "tilt drift model: " << (calib.has_tilt_drift ? "yes" : "no") << "\n";
    for (const std::string& p : calib.provenance) side << "provenance: " << p << "\n";
}

CalibrationSet read_calibration(const std::string& path) {
    SectionReader r = SectionReader::load(path);
    json meta = json::parse(r.get_string("meta"));
    if (meta.value("container", "") != "calibration")
        raise(ErrorKind::format, "'" + path + "' is not a calibration container");

    CalibrationSet c;
    c.version = meta.at("version");
    c.sensor_hash = meta.at("sensor_hash");
    c.provenance = meta.at("provenance").get<std::vector<std::string>>();
    c.dark.dark_width = meta.at("dark_width");
    c.dark.port_edges = meta.at("port_edges").get<std::vector<std::size_t>>();
    c.smear.mode = mode_from_name(meta.at("smear").at("mode"));
    c.smear.row_transfer_us = meta.at("smear").at("row_transfer_us");
    c.smear.total_detector_rows = meta.at("smear").at("total_detector_rows");
    c.smear.integration_ms = meta.at("smear").at("integration_ms");
    c.has_smear = meta.at("has_smear");
    c.has_attitude = meta.at("has_attitude");
    if (c.has_attitude) {
        const json& a = meta.at("attitude");
        c.attitude.roll_bias_rad = a.at("roll_bias_rad");
        c.attitude.pitch_bias_rad = a.at("pitch_bias_rad");
        c.attitude.interior_roll = poly_from_json(a.at("interior_roll"));
        c.attitude.interior_pitch = poly_from_json(a.at("interior_pitch"));
    }
    c.has_tilt_drift = meta.at("has_tilt_drift");
    if (c.has_tilt_drift) {
        const json& t = meta.at("tilt_drift");
        c.tilt_drift.slope_rad_per_deg = t.at("slope_rad_per_deg");
        c.tilt_drift.intercept_rad = t.at("intercept_rad");
        c.tilt_drift.residual_rms_rad = t.at("residual_rms_rad");
        c.tilt_drift.point_count = t.at("point_count");
    }
    for (const auto& [key, p] : meta.at("bbr").items()) {
        geocal::BBRProfile prof;
        prof.band = std::stoi(key);
        prof.along = poly_from_json(p.at("along"));
        prof.across = poly_from_json(p.at("across"));
        prof.fit_rms_along = p.at("fit_rms_along");
        prof.fit_rms_across = p.at("fit_rms_across");
        prof.tie_points = p.at("tie_points");
        prof.pitch_correction = poly_from_json(p.at("pitch_correction"));
        prof.roll_correction = poly_from_json(p.at("roll_correction"));
        c.bbr[prof.band] = prof;
    }
    for (const auto& [key, bc] : meta.at("coeffs").items()) {
        rad::BandCoeffs b;
        b.c_per_row = bc.at("c_per_row").get<std::vector<double>>();
        b.d_per_row = bc.at("d_per_row").get<std::vector<double>>();
        b.nonlin.x = bc.at("nonlin_x").get<std::vector<double>>();
        b.nonlin.y = bc.at("nonlin_y").get<std::vector<double>>();
        c.coeffs.bands[std::stoi(key)] = b;
    }
    for (const std::string& name : r.names()) {
        if (name.rfind("dark_", 0) == 0)
            c.dark.profiles[std::stoi(name.substr(5))] = r.get_vector<double>(name);
        if (name.rfind("prnu_", 0) == 0) {
            int band = std::stoi(name.substr(5));
            rad::PRNUEntry e;
            e.gains = r.get_vector<double>(name);
            e.dead_mask = r.get_vector<std::uint8_t>("prnumask_" + std::to_string(band));
            c.prnu.bands[band] = e;
        }
    }
    return c;
}

// --------------------------------------------------------------------------
// Scenes

void write_scene(const std::string& path, const sim::Scene& scene) {
    json meta;
    meta["container"] = "scene";
    meta["seed"] = scene.seed;
    meta["lat_min_deg"] = scene.lat_min_deg;
    meta["lat_max_deg"] = scene.lat_max_deg;
    meta["lon_min_deg"] = scene.lon_min_deg;
    meta["lon_max_deg"] = scene.lon_max_deg;
    meta["dlat_deg"] = scene.dlat_deg;
    meta["dlon_deg"] = scene.dlon_deg;
    meta["cell_m"] = scene.cell_m;
    meta["rows"] = scene.texture.rows();
    meta["cols"] = scene.texture.cols();
    json bands = json::object();
    for (const auto& [b, lvl] : scene.bands)
        bands[std::to_string(b)] = {{"mean", lvl.mean}, {"contrast", lvl.contrast}};
    meta["bands"] = bands;
    json targets = json::array();
    for (const sim::PointTarget& t : scene.point_targets)
        targets.push_back({{"lat_deg", t.lat_deg},
                           {"lon_deg", t.lon_deg},
                           {"sigma_m", t.sigma_m},
                           {"amplitude", t.amplitude}});
    meta["point_targets"] = targets;
    json patches = json::array();
    for (const sim::UniformPatch& p : scene.patches)
        patches.push_back({{"lat_min", p.lat_min},
                           {"lat_max", p.lat_max},
                           {"lon_min", p.lon_min},
                           {"lon_max", p.lon_max},
                           {"value", p.value}});
    meta["patches"] = patches;

    SectionWriter w;
    w.add_string("meta", meta.dump());
    w.add_vector("texture", scene.texture.values());
    w.save(path);
}

sim::Scene read_scene(const std::string& path) {
    SectionReader r = SectionReader::load(path);
    json meta = json::parse(r.get_string("meta"));
    if (meta.value("container", "") != "scene")
        raise(ErrorKind::format, "'" + path + "' is not a scene container");
    sim::Scene s;
    s.seed = meta.at("seed");
    s.lat_min_deg = meta.at("lat_min_deg");
    s.lat_max_deg = meta.at("lat_max_deg");
    s.lon_min_deg = meta.at("lon_min_deg");
    s.lon_max_deg = meta.at("lon_max_deg");
    s.dlat_deg = meta.at("dlat_deg");
    s.dlon_deg = meta.at("dlon_deg");
    s.cell_m = meta.at("cell_m");
    std::size_t rows = meta.at("rows"), cols = meta.at("cols");
    std::vector<double> tex = r.get_vector<double>("texture");
    if (tex.size() != rows * cols) raise(ErrorKind::format, "texture section has wrong size");
    s.texture = Raster(rows, cols);
    s.texture.values() = std::move(tex);
    for (const auto& [key, lvl] : meta.at("bands").items())
        s.bands[std::stoi(key)] = sim::BandLevel{lvl.at("mean"), lvl.at("contrast")};
    for (const json& t : meta.at("point_targets"))
        s.point_targets.push_back(sim::PointTarget{t.at("lat_deg"), t.at("lon_deg"),
                                                   t.at("sigma_m"), t.at("amplitude")});
    for (const json& p : meta.at("patches"))
        s.patches.push_back(sim::UniformPatch{p.at("lat_min"), p.at("lat_max"),
                                              p.at("lon_min"), p.at("lon_max"),
                                              p.at("value")});
    return s;
}

void export_flat(const std::string& path, const Raster& data, const std::string& description) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) raise(ErrorKind::missing_input, "cannot create '" + path + "'");
    f.write(reinterpret_cast<const char*>(data.data()),
            std::streamsize(data.size() * sizeof(double)));
    std::ofstream side(path + ".txt");
    side << description << "\n"
         << "dtype: float64 little-endian\n"
         << "rows: " << data.rows() << "\n"
         << "cols: " << data.cols() << "\n";
}

}  // namespace ocproc::io
