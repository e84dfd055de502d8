#include "ocproc/tdi/tdi.hpp"

#include <algorithm>
#include <cmath>

#include "ocproc/common/parallel.hpp"

namespace ocproc::tdi {

using geom::CameraModel;
using geom::CameraPose;
using geom::Vec3;

void TDIConfig::validate() const {
    if (!(sigma > 0)) raise(ErrorKind::domain, "TDI sigma must be positive");
    if (w_along < 0 || w_across < 0) raise(ErrorKind::domain, "window extents must be >= 0");
}

BinResult bin_exponential(const std::vector<NeighborSample>& samples, double sigma,
                          bool normalize) {
    if (samples.empty()) raise(ErrorKind::domain, "bin_exponential with no samples");
    double s2 = sigma * sigma;
    BinResult r;
    for (const NeighborSample& s : samples) {
        double w = std::exp(-s.distance / s2);
        r.value += w * s.value;
        r.weight_sum += w;
        r.weight_sq_sum += w * w;
    }
    if (normalize && r.weight_sum > 0) r.value /= r.weight_sum;
    return r;
}

double bin_nearest(const std::vector<NeighborSample>& samples) {
    if (samples.empty()) raise(ErrorKind::domain, "bin_nearest with no samples");
    const NeighborSample* best = &samples.front();
    for (const NeighborSample& s : samples) {
        if (s.distance < best->distance ||
            (s.distance == best->distance &&
             (s.frame < best->frame ||
              (s.frame == best->frame &&
               (s.row < best->row || (s.row == best->row && s.col < best->col))))))
            best = &s;
    }
    return best->value;
}

// ---------------------------------------------------------------------------
// ProcessingGeometry

ProcessingGeometry::ProcessingGeometry(const rad::FrameStack& stack, const CalibrationSet* calib)
    : stack_(&stack), calib_(calib) {}

geom::AttitudeState ProcessingGeometry::attitude_at(double t, double tilt_deg) const {
    geom::AttitudeState att = stack_->attitude.at(t);
    if (calib_) {
        if (calib_->has_attitude) {
            att.roll_rad -= calib_->attitude.roll_bias_rad;
            att.pitch_rad -= calib_->attitude.pitch_bias_rad;
        }
        if (calib_->has_tilt_drift)
            att.pitch_rad -= calib_->tilt_drift.pitch_correction(tilt_deg);
    }
    return att;
}

geom::CameraPose ProcessingGeometry::pose_at(double t, double tilt_deg) const {
    return geom::make_pose(geom::propagate_orbit(stack_->orbit, t), attitude_at(t, tilt_deg));
}

geom::SensorGeometry ProcessingGeometry::band_sensor(int band) const {
    geom::SensorGeometry s = stack_->sensor;
    auto add = [](Polynomial& dst, const Polynomial& src, double sign) {
        std::vector<double> c = dst.coeffs();
        const std::vector<double>& o = src.coeffs();
        if (o.size() > c.size()) c.resize(o.size(), 0.0);
        for (std::size_t i = 0; i < o.size(); ++i) c[i] += sign * o[i];
        dst = Polynomial(std::move(c));
    };
    if (calib_) {
        if (calib_->has_attitude) {
            add(s.interior_along, calib_->attitude.interior_pitch, -1.0);
            add(s.interior_across, calib_->attitude.interior_roll, -1.0);
        }
        if (band >= 0) {
            auto it = calib_->bbr.find(band);
            if (it != calib_->bbr.end()) {
                add(s.interior_along, it->second.pitch_correction, 1.0);
                add(s.interior_across, it->second.roll_correction, 1.0);
            }
        }
    }
    return s;
}

const CameraModel& ProcessingGeometry::band_camera(int band, double tilt_deg) const {
    auto key = std::make_pair(band, (long long)std::llround(tilt_deg * 1e7));
    auto it = cams_.find(key);
    if (it == cams_.end()) {
        geom::SensorGeometry s = band_sensor(band);
        s.tilt_deg = tilt_deg;
        auto cam = std::make_unique<CameraModel>(s, geom::binned_layout(s, stack_->mode));
        it = cams_.emplace(key, std::move(cam)).first;
    }
    return *it->second;
}

const CameraModel& ProcessingGeometry::virtual_camera(double tilt_deg) const {
    auto key = std::make_pair(-1, (long long)std::llround(tilt_deg * 1e7));
    auto it = cams_.find(key);
    if (it == cams_.end()) {
        geom::SensorGeometry s = band_sensor(-1);
        s.tilt_deg = tilt_deg;
        auto cam =
            std::make_unique<CameraModel>(s, geom::virtual_line_layout(s, stack_->mode));
        it = cams_.emplace(key, std::move(cam)).first;
    }
    return *it->second;
}

// ---------------------------------------------------------------------------
// Buffers

static void size_layers(ProductGrid& g) {
    if (g.scans == 0 || g.pixels == 0) raise(ErrorKind::domain, "zero-area output grid");
    for (int b : g.bands) g.radiance.emplace(b, Raster(g.scans, g.pixels, kUnfilledValue));
    g.lat = Raster(g.scans, g.pixels, kUnfilledValue);
    g.lon = Raster(g.scans, g.pixels, kUnfilledValue);
    g.sample_count = CountImage(g.scans, g.pixels, 0);
    g.effective_samples = Raster(g.scans, g.pixels, 0.0);
    g.quality_mask = MaskImage(g.scans, g.pixels, quality::kUnfilled);
}

ProductGrid allocate_output(const geom::VirtualLinearModel& model,
                            const std::vector<int>& bands) {
    ProductGrid g;
    g.level = Level::l1b;
    g.mode = model.mode;
    g.bands = bands;
    g.scans = model.num_scans;
    g.pixels = model.num_pixels;
    size_layers(g);
    g.metadata["start_time"] = model.start_time;
    g.metadata["line_period"] = model.line_period;
    return g;
}

ProductGrid allocate_output_l1c(const rad::FrameStack& stack, ProcessingGeometry& geometry,
                                const std::vector<int>& bands, double pixel_size_m,
                                double terrain_height_m) {
    std::vector<double> times = stack.frame_times();
    auto first_band_frames = stack.band_frames(stack.frames.front().band);

    // Footprint polygon: the four frame corners of every frame.
    std::vector<geom::GroundPoint> corners;
    for (const rad::RawFrame* f : first_band_frames) {
        const CameraModel& cam = geometry.band_camera(f->band, f->tilt_deg);
        CameraPose pose = geometry.pose_at(f->start_time, f->tilt_deg);
        double rmax = double(cam.rows() - 1), cmax = double(cam.cols() - 1);
        for (auto [r, c] : {std::pair{0.0, 0.0}, std::pair{0.0, cmax}, std::pair{rmax, 0.0},
                            std::pair{rmax, cmax}}) {
            Vec3 g = cam.ground_ecef(pose, r, c, terrain_height_m);
            corners.push_back(geom::geodetic_from_ecef(g));
        }
    }
    double clat = 0, clon = 0;
    for (const auto& p : corners) {
        clat += p.lat_deg;
        clon += p.lon_deg;  // scenes are desk-scale, no wraparound handling
    }
    clat /= double(corners.size());
    clon /= double(corners.size());

    if (pixel_size_m <= 0) pixel_size_m = stack.mode == Mode::lac ? 366.0 : 1100.0;
    ProductGrid g;
    g.level = Level::l1c;
    g.mode = stack.mode;
    g.bands = bands;
    g.has_projection = true;
    g.projection = geom::lcc_for_scene_center(clat, clon, pixel_size_m);

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : corners) {
        geom::MapXY xy = geom::lcc_forward(g.projection, p);
        xmin = std::min(xmin, xy.x);
        xmax = std::max(xmax, xy.x);
        ymin = std::min(ymin, xy.y);
        ymax = std::max(ymax, xy.y);
    }
    g.grid_x0 = xmin;
    g.grid_y0 = ymax;
    g.pixels = std::size_t(std::ceil((xmax - xmin) / pixel_size_m)) + 1;
    g.scans = std::size_t(std::ceil((ymax - ymin) / pixel_size_m)) + 1;
    size_layers(g);
    g.metadata["start_time"] = times.front();
    return g;
}

// ---------------------------------------------------------------------------
// Gathering

SampleGatherer::SampleGatherer(const std::vector<rad::FrameData>& frames,
                               const CameraModel& camera, std::vector<CameraPose> poses,
                               double output_pixel_m, const TDIConfig& cfg)
    : frames_(&frames), camera_(&camera), poses_(std::move(poses)),
      output_pixel_m_(output_pixel_m), cfg_(cfg) {
    if (frames.size() != poses_.size())
        raise(ErrorKind::domain, "one pose per frame required");
    centers_.resize(poses_.size());
    along_dirs_.resize(poses_.size());
    rot_.resize(poses_.size());
    double rc = 0.5 * double(camera.rows() - 1);
    double cc = 0.5 * double(camera.cols() - 1);
    for (std::size_t k = 0; k < poses_.size(); ++k) {
        rot_[k] = poses_[k].body2ecef * camera.mount();
        Vec3 head = camera.ground_ecef(poses_[k], double(camera.rows() - 1), cc,
                                       cfg_.terrain_height_m);
        Vec3 tail = camera.ground_ecef(poses_[k], 0.0, cc, cfg_.terrain_height_m);
        centers_[k] = camera.ground_ecef(poses_[k], rc, cc, cfg_.terrain_height_m);
        along_dirs_[k] = (head - tail).normalized();
        if (k == 0) {
            double footprint = (head - tail).norm() * double(camera.rows()) /
                               std::max<double>(1.0, double(camera.rows() - 1));
            half_extent_m_ = 0.5 * footprint * 1.25 + 2.0 * output_pixel_m_;
        }
    }
}

void SampleGatherer::gather(const Vec3& query, std::vector<NeighborSample>& out) const {
    out.clear();
    const CameraModel& cam = *camera_;
    long rows = long(cam.rows()), cols = long(cam.cols());
    double px2 = output_pixel_m_ * output_pixel_m_;
    for (std::size_t k = 0; k < poses_.size(); ++k) {
        if (std::abs(along_dirs_[k].dot(query - centers_[k])) > half_extent_m_) continue;
        CameraModel::Projection proj = cam.project(poses_[k], query);
        if (!proj.in_front || !proj.in_bounds) continue;
        long l0 = std::lround(proj.row), m0 = std::lround(proj.col);
        const Raster& vals = (*frames_)[k].values;
        for (long l = l0 - cfg_.w_along; l <= l0 + cfg_.w_along; ++l) {
            if (l < 0 || l >= rows) continue;
            for (long m = m0 - cfg_.w_across; m <= m0 + cfg_.w_across; ++m) {
                if (m < 0 || m >= cols) continue;
                Vec3 dir = rot_[k] * cam.look_pinhole_fast(std::size_t(l), std::size_t(m));
                Vec3 g = geom::intersect_ellipsoid(poses_[k].position, dir,
                                                   cfg_.terrain_height_m);
                double d2 = (g - query).squaredNorm() / px2;
                NeighborSample s;
                s.frame = int(k);
                s.row = int(l);
                s.col = int(m);
                s.distance = cfg_.squared_distance ? d2 : std::sqrt(d2);
                s.value = vals(std::size_t(l), std::size_t(m));
                out.push_back(s);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// run_tdi

namespace {

struct BandFrames {
    int band = 0;
    std::vector<rad::FrameData> frames;  // time-sorted
};

std::vector<BandFrames> group_by_band(const std::vector<rad::FrameData>& frames) {
    std::map<int, std::vector<rad::FrameData>> by_band;
    for (const rad::FrameData& f : frames) by_band[f.band].push_back(f);
    std::vector<BandFrames> out;
    std::size_t n = 0;
    for (auto& [band, list] : by_band) {
        std::sort(list.begin(), list.end(), [](const rad::FrameData& a, const rad::FrameData& b) {
            return a.start_time < b.start_time;
        });
        if (n == 0) n = list.size();
        if (list.size() != n) raise(ErrorKind::data, "bands carry different frame counts");
        out.push_back(BandFrames{band, std::move(list)});
    }
    return out;
}

}  // namespace

ProductGrid run_tdi(const std::vector<rad::FrameData>& frames, ProcessingGeometry& geometry,
                    const TDIConfig& cfg) {
    cfg.validate();
    if (frames.empty()) raise(ErrorKind::domain, "run_tdi without frames");
    std::vector<BandFrames> bands = group_by_band(frames);
    const rad::FrameStack& stack = geometry.stack();
    Mode mode = stack.mode;

    std::vector<int> band_ids;
    for (const BandFrames& b : bands) band_ids.push_back(b.band);

    geom::VirtualLinearModel vmodel = geom::build_virtual_linear_model(stack, mode);
    ProductGrid grid = cfg.level == Level::l1c
                           ? allocate_output_l1c(stack, geometry, band_ids,
                                                 cfg.l1c_pixel_size_m, cfg.terrain_height_m)
                           : allocate_output(vmodel, band_ids);

    // Pre-build every camera the parallel loops will touch.
    for (const BandFrames& b : bands)
        for (const rad::FrameData& f : b.frames) geometry.band_camera(b.band, f.tilt_deg);
    for (std::size_t i = 0; i < grid.scans; ++i)
        geometry.virtual_camera(vmodel.tilt_at(vmodel.scan_time(i)));

    // Query ground location of every output pixel (shared by all bands),
    // plus the geolocation layers.
    std::vector<Vec3> query(grid.scans * grid.pixels, Vec3::Zero());
    std::vector<std::uint8_t> query_ok(grid.scans * grid.pixels, 0);
    if (cfg.level == Level::l1c) {
        parallel_for(grid.scans, [&](std::size_t i) {
            for (std::size_t j = 0; j < grid.pixels; ++j) {
                double x = grid.grid_x0 + double(j) * grid.projection.pixel_size_m;
                double y = grid.grid_y0 - double(i) * grid.projection.pixel_size_m;
                geom::GroundPoint p = geom::lcc_inverse(grid.projection, x, y);
                p.height_m = cfg.terrain_height_m;
                query[i * grid.pixels + j] = geom::ecef_from_geodetic(p);
                query_ok[i * grid.pixels + j] = 1;
                grid.lat(i, j) = p.lat_deg;
                grid.lon(i, j) = p.lon_deg;
            }
        });
    } else {
        parallel_for(grid.scans, [&](std::size_t i) {
            double t = vmodel.scan_time(i);
            double tilt = vmodel.tilt_at(t);
            const CameraModel& vcam = geometry.virtual_camera(tilt);
            CameraPose pose = geometry.pose_at(t, tilt);
            for (std::size_t j = 0; j < grid.pixels; ++j) {
                try {
                    Vec3 g = vcam.ground_ecef(pose, 0.0, double(j), cfg.terrain_height_m);
                    query[i * grid.pixels + j] = g;
                    query_ok[i * grid.pixels + j] = 1;
                    geom::GroundPoint p = geom::geodetic_from_ecef(g);
                    grid.lat(i, j) = p.lat_deg;
                    grid.lon(i, j) = p.lon_deg;
                } catch (const Error&) {
                    grid.quality_mask(i, j) |= quality::kGeometryError;
                }
            }
        });
    }

    // Nominal output pixel size for kernel distances: the scan-to-scan
    // ground step at the grid center (L1C: the map pixel).
    double output_pixel_m = grid.has_projection ? grid.projection.pixel_size_m : 366.0;
    if (!grid.has_projection && grid.scans >= 2) {
        std::size_t i0 = grid.scans / 2, j0 = grid.pixels / 2;
        if (query_ok[i0 * grid.pixels + j0] && query_ok[(i0 + 1) * grid.pixels + j0])
            output_pixel_m =
                (query[i0 * grid.pixels + j0] - query[(i0 + 1) * grid.pixels + j0]).norm();
    }
    grid.metadata["output_pixel_m"] = output_pixel_m;

    // Sample-count/quality layers follow the reference band when present.
    int count_band = band_ids.front();
    for (int b : band_ids)
        if (b == 7) count_band = 7;

    for (const BandFrames& bf : bands) {
        std::vector<CameraPose> poses;
        poses.reserve(bf.frames.size());
        const CameraModel* cam = nullptr;
        for (const rad::FrameData& f : bf.frames) {
            poses.push_back(geometry.pose_at(f.start_time, f.tilt_deg));
            cam = &geometry.band_camera(bf.band, f.tilt_deg);
        }
        // A varying tilt would need per-frame cameras; acquisitions hold one
        // tilt, so the last camera covers all frames of the band.
        SampleGatherer gatherer(bf.frames, *cam, poses, output_pixel_m, cfg);
        Raster& out = grid.band(bf.band);
        bool fill_counts = bf.band == count_band;

        parallel_for(grid.scans, [&](std::size_t i) {
            std::vector<NeighborSample> samples;
            samples.reserve(std::size_t((2 * cfg.w_along + 1) * (2 * cfg.w_across + 1) * 32));
            for (std::size_t j = 0; j < grid.pixels; ++j) {
                std::size_t idx = i * grid.pixels + j;
                if (!query_ok[idx]) continue;
                gatherer.gather(query[idx], samples);
                if (samples.empty()) continue;

                int nframes = 1;
                for (std::size_t s = 1; s < samples.size(); ++s)
                    if (samples[s].frame != samples[s - 1].frame) ++nframes;

                double value = 0.0, neff = 0.0;
                if (cfg.kernel == Kernel::exponential) {
                    BinResult r = bin_exponential(samples, cfg.sigma, cfg.normalize);
                    value = r.value;
                    neff = r.weight_sq_sum > 0
                               ? r.weight_sum * r.weight_sum / r.weight_sq_sum
                               : 0.0;
                } else {
                    // Nearest sample of each contributing frame, averaged.
                    double acc = 0.0;
                    int n = 0;
                    std::size_t s = 0;
                    while (s < samples.size()) {
                        const NeighborSample* best = &samples[s];
                        std::size_t e = s;
                        while (e < samples.size() && samples[e].frame == samples[s].frame) {
                            if (samples[e].distance < best->distance) best = &samples[e];
                            ++e;
                        }
                        acc += best->value;
                        ++n;
                        s = e;
                    }
                    value = acc / double(n);
                    neff = double(n);
                }
                out(i, j) = value;
                if (fill_counts) {
                    grid.sample_count(i, j) = std::uint16_t(nframes);
                    grid.effective_samples(i, j) = neff;
                    grid.quality_mask(i, j) &= std::uint8_t(~quality::kUnfilled);
                }
            }
        });
    }

    grid.metadata["mode"] = mode_name(mode);
    grid.metadata["level"] = level_name(grid.level);
    grid.metadata["kernel"] = cfg.kernel == Kernel::exponential ? "exp" : "nn";
    grid.metadata["sigma"] = cfg.sigma;
    grid.metadata["normalize"] = cfg.normalize;
    grid.metadata["num_scans"] = grid.scans;
    grid.metadata["num_pixels"] = grid.pixels;
    return grid;
}

}  // namespace ocproc::tdi
