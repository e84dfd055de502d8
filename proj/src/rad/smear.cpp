#include "ocproc/rad/smear.hpp"

namespace ocproc::rad {

SmearModel build_smear_weights(const SmearParams& p) {
    double transfer_total_ms = p.row_transfer_us * 1e-3 * double(p.total_detector_rows);
    if (!(p.integration_ms > transfer_total_ms))
        raise(ErrorKind::domain, "invalid timing: integration must exceed the total transfer");
    double eps = (p.row_transfer_us * 1e-3) / p.integration_ms;
    if (eps >= 1.0) raise(ErrorKind::domain, "invalid timing: per-row smear fraction >= 1");

    std::size_t rows = p.frame_rows ? p.frame_rows : mode_traits(p.mode).frame_rows;
    double phi = eps * double(p.total_detector_rows);

    SmearModel m;
    m.mode_ = p.mode;
    m.epsilon_ = eps;
    m.row_gain_ = 1.0 + phi;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(Eigen::Index(rows), Eigen::Index(rows));
    const long offsets[3] = {+1, +2, -1};
    for (long i = 0; i < long(rows); ++i) {
        w(i, i) += 1.0;
        for (long off : offsets) {
            long j = i + off;
            if (j < 0) j = 0;                       // edge features estimated
            if (j >= long(rows)) j = long(rows) - 1;  // from the frame boundary
            w(i, j) += phi / 3.0;
        }
    }
    w /= (1.0 + phi);
    m.weights_ = w;
    m.lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(w);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    m.condition_ = smin > 0 ? svd.singularValues()(0) / smin
                            : std::numeric_limits<double>::infinity();
    return m;
}

SmearModel SmearModel::from_matrix(Mode mode, Eigen::MatrixXd w, double epsilon,
                                   double row_gain) {
    SmearModel m;
    m.mode_ = mode;
    m.epsilon_ = epsilon;
    m.row_gain_ = row_gain;
    m.weights_ = std::move(w);
    m.lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(m.weights_);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.weights_);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    m.condition_ = smin > 0 ? svd.singularValues()(0) / smin
                            : std::numeric_limits<double>::infinity();
    return m;
}

static void check_shape(const SmearModel& m, const Raster& frame) {
    if (frame.rows() != m.frame_rows())
        raise(ErrorKind::domain, "frame rows do not match the smear model");
}

Raster SmearModel::apply(const Raster& frame) const {
    check_shape(*this, frame);
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> in(frame.data(), Eigen::Index(frame.rows()),
                                Eigen::Index(frame.cols()));
    Raster out(frame.rows(), frame.cols());
    Eigen::Map<RowMat> o(out.data(), Eigen::Index(frame.rows()), Eigen::Index(frame.cols()));
    o = weights_ * in;
    return out;
}

Raster SmearModel::correct(const Raster& frame) const {
    check_shape(*this, frame);
    if (!(condition_ < 1e8))
        raise(ErrorKind::conditioning,
              "smear matrix condition number " + std::to_string(condition_) + " exceeds 1e8");
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> in(frame.data(), Eigen::Index(frame.rows()),
                                Eigen::Index(frame.cols()));
    Raster out(frame.rows(), frame.cols());
    Eigen::Map<RowMat> o(out.data(), Eigen::Index(frame.rows()), Eigen::Index(frame.cols()));
    o = lu_.solve(in);
    return out;
}

}  // namespace ocproc::rad
