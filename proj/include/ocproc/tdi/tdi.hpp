#pragma once

#include <map>
#include <memory>
#include <vector>

#include "ocproc/calibration.hpp"
#include "ocproc/geom/virtual_line.hpp"
#include "ocproc/product.hpp"
#include "ocproc/rad/frame.hpp"

namespace ocproc::tdi {

enum class Kernel { exponential, nearest };

struct TDIConfig {
    double sigma = 0.5;          // output-pixel units
    int w_along = 1;             // neighborhood half-extent, rows
    int w_across = 1;            // neighborhood half-extent, columns
    Kernel kernel = Kernel::exponential;
    Level level = Level::l1b;
    bool normalize = true;
    bool squared_distance = true;   // d = squared ground offset (default)
    double l1c_pixel_size_m = 0.0;  // 0: mode nominal
    double terrain_height_m = 0.0;

    void validate() const;
};

struct NeighborSample {
    int frame = 0;      // k, index into the band's frame sequence
    int row = 0;        // l, frame row
    int col = 0;        // m, frame column
    double distance = 0.0;  // ground offset in output-pixel units
    double value = 0.0;     // grey/radiance value at (l, m)
};

struct BinResult {
    double value = 0.0;
    double weight_sum = 0.0;
    double weight_sq_sum = 0.0;
};

// Step-4 kernel: weights exp(-d / sigma^2) over the gathered samples.
BinResult bin_exponential(const std::vector<NeighborSample>& samples, double sigma,
                          bool normalize);
// Minimum-distance sample; ties broken by lowest frame then lowest (l, m).
double bin_nearest(const std::vector<NeighborSample>& samples);

// Per-frame camera geometry as the ground processor reconstructs it:
// reported attitude corrected by the calibration set (attitude bias, tilt
// drift, per-band registration angles).
class ProcessingGeometry {
  public:
    ProcessingGeometry(const rad::FrameStack& stack, const CalibrationSet* calib);

    const rad::FrameStack& stack() const { return *stack_; }
    geom::AttitudeState attitude_at(double t, double tilt_deg) const;
    geom::CameraPose pose_at(double t, double tilt_deg) const;
    // Binned-frame camera for a band at a given commanded tilt (cached).
    const geom::CameraModel& band_camera(int band, double tilt_deg) const;
    const geom::CameraModel& virtual_camera(double tilt_deg) const;

  private:
    geom::SensorGeometry band_sensor(int band) const;
    const rad::FrameStack* stack_;
    const CalibrationSet* calib_;
    mutable std::map<std::pair<int, long long>, std::unique_ptr<geom::CameraModel>> cams_;
};

// Empty output buffer for the virtual-linear grid (Level-1B).
ProductGrid allocate_output(const geom::VirtualLinearModel& model, const std::vector<int>& bands);
// Empty output buffer on an LCC grid covering the footprint of all frames.
ProductGrid allocate_output_l1c(const rad::FrameStack& stack, ProcessingGeometry& geometry,
                                const std::vector<int>& bands, double pixel_size_m,
                                double terrain_height_m);

// Gathers every frame's neighborhood samples of the query ground location.
// Samples are ordered by frame then row then column; an empty result is a
// valid (unfilled) outcome.
class SampleGatherer {
  public:
    SampleGatherer(const std::vector<rad::FrameData>& frames, const geom::CameraModel& camera,
                   std::vector<geom::CameraPose> poses, double output_pixel_m,
                   const TDIConfig& cfg);

    void gather(const geom::Vec3& query_ecef, std::vector<NeighborSample>& out) const;

  private:
    const std::vector<rad::FrameData>* frames_;
    const geom::CameraModel* camera_;
    std::vector<geom::CameraPose> poses_;
    std::vector<geom::Mat3> rot_;         // body2ecef * mount per frame
    std::vector<geom::Vec3> centers_;     // footprint center per frame
    std::vector<geom::Vec3> along_dirs_;  // ground along-track unit per frame
    double half_extent_m_ = 0.0;          // along prefilter half width
    double output_pixel_m_ = 1.0;
    TDIConfig cfg_;
};

// Steps 1-4 over every output pixel and band. Frames must be
// radiometrically corrected (one FrameData per band and frame time).
ProductGrid run_tdi(const std::vector<rad::FrameData>& frames, ProcessingGeometry& geometry,
                    const TDIConfig& cfg);

}  // namespace ocproc::tdi
