#include "ocproc/rad/prnu.hpp"

#include <cmath>

#include "ocproc/common/stats.hpp"

namespace ocproc::rad {

PRNUEntry estimate_prnu(const std::vector<const Raster*>& scenes, const PRNUOptions& opt) {
    if (scenes.size() < opt.min_scenes)
        raise(ErrorKind::insufficient_data,
              "PRNU estimation needs at least " + std::to_string(opt.min_scenes) + " scenes, got " +
                  std::to_string(scenes.size()));
    std::size_t cols = scenes.front()->cols();
    for (const Raster* s : scenes)
        if (s->cols() != cols) raise(ErrorKind::data, "scene column counts differ");

    std::vector<double> col_means(cols, 0.0);
    std::vector<double> samples;
    for (std::size_t c = 0; c < cols; ++c) {
        samples.clear();
        for (const Raster* s : scenes)
            for (std::size_t r = 0; r < s->rows(); ++r) samples.push_back((*s)(r, c));
        col_means[c] = trimmed_mean(samples, opt.trim_fraction);
    }

    PRNUEntry entry;
    entry.gains.assign(cols, 1.0);
    entry.dead_mask.assign(cols, 0);

    std::vector<double> live;
    for (std::size_t c = 0; c < cols; ++c)
        if (col_means[c] > 1e-9) live.push_back(col_means[c]);
    if (live.empty()) raise(ErrorKind::data, "all columns dead in PRNU estimation");
    double grand = trimmed_mean(live, opt.trim_fraction);

    double live_sum = 0.0;
    std::size_t n_live = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (col_means[c] <= 1e-9) {
            entry.dead_mask[c] = 1;
            entry.gains[c] = 1.0;
        } else {
            entry.gains[c] = grand / col_means[c];
            live_sum += entry.gains[c];
            ++n_live;
        }
    }
    // Renormalize so the band mean (dead columns pinned at 1) is exactly 1.
    if (n_live > 0) {
        double k = double(n_live) / live_sum;
        for (std::size_t c = 0; c < cols; ++c)
            if (!entry.dead_mask[c]) entry.gains[c] *= k;
    }
    return entry;
}

Raster apply_prnu(const Raster& values, const PRNUEntry& entry) {
    if (entry.gains.size() != values.cols())
        raise(ErrorKind::domain, "PRNU table length does not match frame columns");
    Raster out(values.rows(), values.cols());
    for (std::size_t r = 0; r < values.rows(); ++r)
        for (std::size_t c = 0; c < values.cols(); ++c)
            out(r, c) = values(r, c) * entry.gains[c];
    return out;
}

Raster apply_prnu(const FrameData& frame, const PRNUTable& table) {
    auto it = table.bands.find(frame.band);
    if (it == table.bands.end())
        raise(ErrorKind::domain,
              "PRNU table carries no entry for band " + std::to_string(frame.band));
    return apply_prnu(frame.values, it->second);
}

}  // namespace ocproc::rad
