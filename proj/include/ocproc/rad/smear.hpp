#pragma once

#include <Eigen/Dense>

#include "ocproc/rad/frame.hpp"

namespace ocproc::rad {

struct SmearParams {
    Mode mode = Mode::lac;
    double row_transfer_us = 2.0;
    std::size_t total_detector_rows = 54;
    double integration_ms = 64.0;
    std::size_t frame_rows = 0;  // 0 = take from the mode
};

// Frame-transfer smear at binned-frame granularity. During each transfer a
// packet picks up epsilon = row_transfer/integration of every row it
// crosses; with no flush, a binned frame carries two ground features of the
// preceding frame (offsets +1, +2 in current-frame rows) and one of the
// subsequent frame (offset -1), estimated from the current frame. W is
// normalized so row sums are exactly 1; the raw accumulation gain
// 1 + total_transfer/integration is kept as row_gain.
class SmearModel {
  public:
    SmearModel() = default;
    Mode mode() const { return mode_; }
    double epsilon() const { return epsilon_; }
    double row_gain() const { return row_gain_; }
    double condition_number() const { return condition_; }
    const Eigen::MatrixXd& weights() const { return weights_; }
    std::size_t frame_rows() const { return std::size_t(weights_.rows()); }

    Raster apply(const Raster& frame) const;    // forward smear (simulator)
    Raster correct(const Raster& frame) const;  // solve W s = m per column

    // Wraps an explicit weight matrix (deserialization, tests).
    static SmearModel from_matrix(Mode mode, Eigen::MatrixXd w, double epsilon = 0.0,
                                  double row_gain = 1.0);

    friend SmearModel build_smear_weights(const SmearParams& p);

  private:
    Mode mode_ = Mode::lac;
    double epsilon_ = 0.0;   // per row crossing
    double row_gain_ = 1.0;  // unnormalized row sum
    double condition_ = 1.0;
    Eigen::MatrixXd weights_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

SmearModel build_smear_weights(const SmearParams& p);

}  // namespace ocproc::rad
