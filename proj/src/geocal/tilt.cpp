#include "ocproc/geocal/tilt.hpp"

#include <set>

#include "ocproc/common/poly.hpp"

namespace ocproc::geocal {

TiltDriftModel fit_tilt_drift(const std::vector<std::pair<double, double>>& samples) {
    std::set<double> distinct;
    for (const auto& [tilt, res] : samples) distinct.insert(tilt);
    if (distinct.size() < 3)
        raise(ErrorKind::domain,
              "tilt drift fit needs at least 3 distinct tilt settings, got " +
                  std::to_string(distinct.size()));
    std::vector<double> x, y;
    for (const auto& [tilt, res] : samples) {
        x.push_back(tilt);
        y.push_back(res);
    }
    LineFit fit = fit_line(x, y);
    TiltDriftModel m;
    m.slope_rad_per_deg = fit.slope;
    m.intercept_rad = fit.intercept;
    m.residual_rms_rad = fit.residual_rms;
    m.point_count = samples.size();
    return m;
}

}  // namespace ocproc::geocal
