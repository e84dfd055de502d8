#pragma once

#include <utility>
#include <vector>

#include "ocproc/geocal/types.hpp"

namespace ocproc::geocal {

// Least-squares line through (tilt angle, pitch residual) pairs; needs at
// least three distinct tilt settings. The corrected model subtracts
// slope*tilt + intercept from the reported pitch.
TiltDriftModel fit_tilt_drift(const std::vector<std::pair<double, double>>& samples);

}  // namespace ocproc::geocal
