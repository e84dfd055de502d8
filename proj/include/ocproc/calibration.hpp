#pragma once

#include <map>
#include <string>
#include <vector>

#include "ocproc/geocal/types.hpp"
#include "ocproc/rad/dark.hpp"
#include "ocproc/rad/prnu.hpp"
#include "ocproc/rad/radiance.hpp"
#include "ocproc/rad/smear.hpp"

namespace ocproc {

// Everything the processing chain needs beyond the raw frames. Built up
// incrementally: radiometric tables first, geometric corrections appended by
// the calibration runs (with provenance).
struct CalibrationSet {
    std::string version = "1";
    std::string sensor_hash;  // geometry fingerprint of the sensor config

    rad::DarkReference dark;
    rad::PRNUTable prnu;
    rad::CalibCoeffs coeffs;
    rad::SmearParams smear;
    bool has_smear = false;  // apply smear inversion during processing

    std::map<int, geocal::BBRProfile> bbr;  // per band, reference band absent/zero
    geocal::AttitudeCorrection attitude;
    bool has_attitude = false;
    geocal::TiltDriftModel tilt_drift;
    bool has_tilt_drift = false;

    std::vector<std::string> provenance;  // input product ids + timestamps
};

}  // namespace ocproc
