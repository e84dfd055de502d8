#include "ocproc/rad/dark.hpp"

#include <algorithm>
#include <cmath>

#include "ocproc/common/stats.hpp"

namespace ocproc::rad {

std::vector<std::size_t> equal_port_edges(std::size_t cols, std::size_t ports) {
    if (ports == 0) raise(ErrorKind::domain, "need at least one readout port");
    std::vector<std::size_t> edges(ports + 1);
    for (std::size_t p = 0; p <= ports; ++p) edges[p] = cols * p / ports;
    return edges;
}

static const std::vector<double>& band_profile(const DarkReference& ref, int band) {
    auto it = ref.profiles.find(band);
    if (it == ref.profiles.end())
        raise(ErrorKind::calibration_missing, "no dark reference for band " + std::to_string(band));
    return it->second;
}

DarkEstimate model_dark(const std::vector<std::vector<std::uint16_t>>& dark_rows,
                        const DarkReference& ref, int band) {
    if (dark_rows.empty()) raise(ErrorKind::domain, "no dark rows in the cadence window");
    const std::vector<double>& profile = band_profile(ref, band);
    std::size_t cols = profile.size();
    std::size_t width = std::min(ref.dark_width ? ref.dark_width : cols, cols);

    DarkEstimate out;
    out.dark.resize(cols, 0.0);
    out.flags.assign(cols, 0);
    for (std::size_t j = width; j < cols; ++j) out.flags[j] = 1;

    const std::vector<std::size_t>& edges =
        ref.port_edges.empty() ? equal_port_edges(cols, 1) : ref.port_edges;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        std::size_t lo = edges[p], hi = std::min(edges[p + 1], cols);
        std::vector<double> cur, refv;
        for (std::size_t j = lo; j < std::min(hi, width); ++j) {
            for (const auto& row : dark_rows) {
                if (j < row.size()) cur.push_back(double(row[j]));
            }
            refv.push_back(profile[j]);
        }
        double scale = 1.0;
        if (!refv.empty()) {
            double ref_med = median_of(refv);
            if (ref_med == 0.0)
                raise(ErrorKind::data, "degenerate dark reference (zero port median)");
            if (!cur.empty()) scale = median_of(cur) / ref_med;
        }
        for (std::size_t j = lo; j < hi; ++j) out.dark[j] = profile[j] * scale;
    }
    return out;
}

std::vector<DarkEstimate> band_dark_estimates(const std::vector<const RawFrame*>& frames,
                                              const DarkReference& ref, int band,
                                              std::size_t cadence) {
    std::size_t n = frames.size();
    std::vector<DarkEstimate> out(n);
    std::vector<std::size_t> with_rows;
    for (std::size_t i = 0; i < n; ++i)
        if (!frames[i]->dark_row.empty()) with_rows.push_back(i);

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<std::uint16_t>> rows;
        std::size_t lo = i >= cadence ? i - cadence : 0;
        std::size_t hi = std::min(n, i + cadence + 1);
        for (std::size_t k = lo; k < hi; ++k)
            if (!frames[k]->dark_row.empty()) rows.push_back(frames[k]->dark_row);

        bool fallback = false;
        if (rows.empty() && !with_rows.empty()) {
            // Nearest frame anywhere in the stack that carried a shielded row.
            std::size_t best = with_rows.front();
            for (std::size_t k : with_rows)
                if (std::llabs((long long)k - (long long)i) <
                    std::llabs((long long)best - (long long)i))
                    best = k;
            rows.push_back(frames[best]->dark_row);
            fallback = true;
        }
        if (rows.empty()) {
            // No shielded data at all: use the unscaled reference, flagged.
            DarkEstimate e;
            const std::vector<double>& profile = band_profile(ref, band);
            e.dark = profile;
            e.flags.assign(profile.size(), 1);
            e.from_fallback = true;
            out[i] = std::move(e);
            continue;
        }
        out[i] = model_dark(rows, ref, band);
        out[i].from_fallback = fallback;
    }
    return out;
}

Raster correct_dark(const Raster& values, const std::vector<double>& dark) {
    if (dark.size() != values.cols())
        raise(ErrorKind::domain, "dark vector length does not match frame columns");
    Raster out(values.rows(), values.cols());
    for (std::size_t r = 0; r < values.rows(); ++r)
        for (std::size_t c = 0; c < values.cols(); ++c)
            out(r, c) = values(r, c) - dark[c];
    return out;
}

Raster correct_dark(const RawFrame& frame, const std::vector<double>& dark) {
    Raster vals(frame.rows(), frame.cols());
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals.values()[i] = double(frame.counts.values()[i]);
    return correct_dark(vals, dark);
}

DarkReference estimate_dark_reference(const FrameStack& night, std::size_t ports) {
    DarkReference ref;
    const ModeTraits& t = mode_traits(night.mode);
    ref.dark_width = t.dark_width;
    ref.port_edges = equal_port_edges(t.frame_cols, ports);
    for (int band : night.bands) {
        auto frames = night.band_frames(band);
        if (frames.empty()) continue;
        std::vector<double> profile(t.frame_cols, 0.0);
        std::size_t n = 0;
        for (const RawFrame* f : frames) {
            for (std::size_t r = 0; r < f->rows(); ++r)
                for (std::size_t c = 0; c < f->cols(); ++c) profile[c] += f->counts(r, c);
            n += f->rows();
        }
        for (double& v : profile) v /= double(n);
        ref.profiles[band] = std::move(profile);
    }
    return ref;
}

}  // namespace ocproc::rad
