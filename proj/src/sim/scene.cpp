#include "ocproc/sim/scene.hpp"

#include <cmath>
#include <complex>
#include <random>

#include <unsupported/Eigen/FFT>

#include "ocproc/common/rng.hpp"

namespace ocproc::sim {

namespace {

// Smallest 5-smooth number >= n, to keep the FFT sizes friendly.
std::size_t fft_friendly(std::size_t n) {
    auto smooth = [](std::size_t v) {
        for (std::size_t p : {2, 3, 5})
            while (v % p == 0) v /= p;
        return v == 1;
    };
    while (!smooth(n)) ++n;
    return n;
}

// Power-law texture: shape white Gaussian noise in the frequency domain so
// the radially averaged PSD falls as f^slope, then normalize to unit rms.
Raster power_law_texture(std::size_t rows, std::size_t cols, double slope,
                         std::uint64_t seed) {
    using Cplx = std::complex<double>;
    std::mt19937_64 eng = make_engine(seed, 0x5ce9e01ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<Cplx> field(rows * cols);
    for (auto& v : field) v = Cplx(gauss(eng), gauss(eng));

    double half = slope / 2.0;  // PSD ~ f^slope -> amplitude ~ f^(slope/2)
    for (std::size_t r = 0; r < rows; ++r) {
        double fr = double(r <= rows / 2 ? r : rows - r) / double(rows);
        for (std::size_t c = 0; c < cols; ++c) {
            double fc = double(c <= cols / 2 ? c : cols - c) / double(cols);
            double f = std::sqrt(fr * fr + fc * fc);
            double amp = f > 0 ? std::pow(f, half) : 0.0;
            field[r * cols + c] *= amp;
        }
    }

    Eigen::FFT<double> fft;
    std::vector<Cplx> tmp_row(cols), out_row(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        std::copy(field.begin() + long(r * cols), field.begin() + long((r + 1) * cols),
                  tmp_row.begin());
        fft.inv(out_row, tmp_row);
        std::copy(out_row.begin(), out_row.end(), field.begin() + long(r * cols));
    }
    std::vector<Cplx> tmp_col(rows), out_col(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) tmp_col[r] = field[r * cols + c];
        fft.inv(out_col, tmp_col);
        for (std::size_t r = 0; r < rows; ++r) field[r * cols + c] = out_col[r];
    }

    Raster tex(rows, cols);
    double mean = 0;
    for (std::size_t i = 0; i < tex.size(); ++i) {
        tex.values()[i] = field[i].real();
        mean += tex.values()[i];
    }
    mean /= double(tex.size());
    double var = 0;
    for (double& v : tex.values()) {
        v -= mean;
        var += v * v;
    }
    double rms = std::sqrt(var / double(tex.size()));
    if (rms > 0)
        for (double& v : tex.values()) v /= rms;
    return tex;
}

}  // namespace

const BandLevel& Scene::band_level(int band) const {
    auto it = bands.find(band);
    if (it == bands.end())
        raise(ErrorKind::domain, "scene has no band " + std::to_string(band));
    return it->second;
}

double Scene::radiance(const BandLevel& level, double lat_deg, double lon_deg) const {
    double v = level.mean * (1.0 + level.contrast * texture_at(lat_deg, lon_deg));
    for (const PointTarget& t : point_targets) {
        double dn = (lat_deg - t.lat_deg) * 111320.0;
        double de = (lon_deg - t.lon_deg) * 111320.0 * std::cos(geom::deg2rad(t.lat_deg));
        double d2 = dn * dn + de * de;
        v += t.amplitude * std::exp(-0.5 * d2 / (t.sigma_m * t.sigma_m));
    }
    for (const UniformPatch& p : patches) {
        if (lat_deg >= p.lat_min && lat_deg <= p.lat_max && lon_deg >= p.lon_min &&
            lon_deg <= p.lon_max)
            v = p.value;
    }
    return v < 0 ? 0.0 : v;
}

Scene generate_scene(const SceneConfig& cfg) {
    if (!(cfg.extent_along_m > 0 && cfg.extent_across_m > 0 && cfg.cell_m > 0))
        raise(ErrorKind::domain, "scene extent and cell size must be positive");
    Scene s;
    s.seed = cfg.seed;
    s.cell_m = cfg.cell_m;
    s.bands = cfg.bands;
    s.point_targets = cfg.point_targets;
    s.patches = cfg.patches;

    double mlat = 111320.0;
    double mlon = 111320.0 * std::cos(geom::deg2rad(cfg.center_lat_deg));
    double half_lat = 0.5 * cfg.extent_along_m / mlat;
    double half_lon = 0.5 * cfg.extent_across_m / mlon;
    s.lat_min_deg = cfg.center_lat_deg - half_lat;
    s.lat_max_deg = cfg.center_lat_deg + half_lat;
    s.lon_min_deg = cfg.center_lon_deg - half_lon;
    s.lon_max_deg = cfg.center_lon_deg + half_lon;

    if (cfg.uniform) {
        s.texture = Raster(2, 2, 0.0);
        s.dlat_deg = s.lat_max_deg - s.lat_min_deg;
        s.dlon_deg = s.lon_max_deg - s.lon_min_deg;
        return s;
    }
    std::size_t rows = fft_friendly(std::size_t(cfg.extent_along_m / cfg.cell_m) + 2);
    std::size_t cols = fft_friendly(std::size_t(cfg.extent_across_m / cfg.cell_m) + 2);
    s.texture = power_law_texture(rows, cols, cfg.spectrum_slope, cfg.seed);
    s.dlat_deg = (s.lat_max_deg - s.lat_min_deg) / double(rows - 1);
    s.dlon_deg = (s.lon_max_deg - s.lon_min_deg) / double(cols - 1);
    return s;
}

}  // namespace ocproc::sim
