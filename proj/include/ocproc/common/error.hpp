#pragma once

#include <stdexcept>
#include <string>

namespace ocproc {

// Error taxonomy shared by all modules. The CLI maps kinds onto distinct
// exit codes, so keep additions grouped with the class they belong to.
enum class ErrorKind {
    domain,              // precondition violated by the caller
    data,                // inconsistent or corrupt input data
    format,              // container parse/checksum/version failures
    config,              // configuration schema violations
    missing_input,       // required file or table absent
    calibration_missing, // processing requested without calibration data
    calibration_mismatch,// calibration set built for different geometry
    not_visible,         // ground point outside swath or time window
    convergence,         // iterative solver failed to converge
    conditioning,        // linear system too ill-conditioned to invert
    insufficient_data,   // too few scenes/tiepoints/samples
    invalid_region,      // evaluation region unusable
    calibration_rejected // inconsistent residual field
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::data: return "data";
        case ErrorKind::format: return "format";
        case ErrorKind::config: return "config";
        case ErrorKind::missing_input: return "missing-input";
        case ErrorKind::calibration_missing: return "calibration-missing";
        case ErrorKind::calibration_mismatch: return "calibration-mismatch";
        case ErrorKind::not_visible: return "not-visible";
        case ErrorKind::convergence: return "convergence";
        case ErrorKind::conditioning: return "conditioning";
        case ErrorKind::insufficient_data: return "insufficient-data";
        case ErrorKind::invalid_region: return "invalid-region";
        case ErrorKind::calibration_rejected: return "calibration-rejected";
    }
    return "unknown";
}

}  // namespace ocproc
