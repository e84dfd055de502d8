#include "ocproc/geocal/match.hpp"

#include <cmath>

#include "ocproc/product.hpp"

namespace ocproc::geocal {

namespace {

// Pearson correlation between the reference patch and the target patch at
// the given offset; quits early on masked pixels.
bool ncc_at(const Raster& ref, const Raster& tgt, long r0, long c0, long dr, long dc,
            long half, double& out) {
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    long n = 0;
    for (long i = -half; i <= half; ++i) {
        for (long j = -half; j <= half; ++j) {
            double a = ref(std::size_t(r0 + i), std::size_t(c0 + j));
            double b = tgt(std::size_t(r0 + dr + i), std::size_t(c0 + dc + j));
            if (a <= kUnfilledValue + 1.0 || b <= kUnfilledValue + 1.0) return false;
            sa += a;
            sb += b;
            saa += a * a;
            sbb += b * b;
            sab += a * b;
            ++n;
        }
    }
    double va = saa - sa * sa / double(n);
    double vb = sbb - sb * sb / double(n);
    if (va <= 1e-12 || vb <= 1e-12) return false;
    out = (sab - sa * sb / double(n)) / std::sqrt(va * vb);
    return true;
}

double parabolic(double cm, double c0, double cp) {
    double denom = cm - 2.0 * c0 + cp;
    if (std::abs(denom) < 1e-12) return 0.0;
    double d = 0.5 * (cm - cp) / denom;
    return std::clamp(d, -0.5, 0.5);
}

}  // namespace

std::vector<TiePoint> dense_match(const Raster& reference, const Raster& target,
                                  const MatchConfig& cfg) {
    if (!reference.same_shape(target))
        raise(ErrorKind::domain, "dense_match rasters must share a grid");
    if (cfg.patch < 9 || cfg.patch % 2 == 0)
        raise(ErrorKind::domain, "patch size must be odd and >= 9");
    long half = long(cfg.patch / 2);
    long R = long(cfg.search_radius);
    long margin = half + R + 1;
    long rows = long(reference.rows()), cols = long(reference.cols());
    if (rows <= 2 * margin || cols <= 2 * margin)
        raise(ErrorKind::domain, "rasters too small for the match configuration");

    std::vector<TiePoint> points;
    long side = 2 * R + 1;
    std::vector<double> surface(std::size_t(side * side));

    for (long r0 = margin; r0 < rows - margin; r0 += long(cfg.grid_spacing)) {
        for (long c0 = margin; c0 < cols - margin; c0 += long(cfg.grid_spacing)) {
            bool valid = true;
            double best = -2.0;
            long best_dr = 0, best_dc = 0;
            for (long dr = -R; dr <= R && valid; ++dr) {
                for (long dc = -R; dc <= R; ++dc) {
                    double v;
                    if (!ncc_at(reference, target, r0, c0, dr, dc, half, v)) {
                        valid = false;
                        break;
                    }
                    surface[std::size_t((dr + R) * side + (dc + R))] = v;
                    if (v > best) {
                        best = v;
                        best_dr = dr;
                        best_dc = dc;
                    }
                }
            }
            if (!valid || best < cfg.score_threshold) continue;
            // Peaks on the search border cannot be refined; drop the node.
            if (std::abs(best_dr) == R || std::abs(best_dc) == R) continue;

            auto at = [&](long dr, long dc) {
                return surface[std::size_t((dr + R) * side + (dc + R))];
            };
            double sub_r = parabolic(at(best_dr - 1, best_dc), best, at(best_dr + 1, best_dc));
            double sub_c = parabolic(at(best_dr, best_dc - 1), best, at(best_dr, best_dc + 1));

            TiePoint tp;
            tp.ref_row = double(r0);
            tp.ref_col = double(c0);
            tp.d_along = double(best_dr) + sub_r;
            tp.d_across = double(best_dc) + sub_c;
            tp.tgt_row = tp.ref_row + tp.d_along;
            tp.tgt_col = tp.ref_col + tp.d_across;
            tp.score = best;
            points.push_back(tp);
        }
    }
    if (points.size() < cfg.min_points)
        raise(ErrorKind::insufficient_data,
              "dense_match found only " + std::to_string(points.size()) + " tie points");
    return points;
}

}  // namespace ocproc::geocal
