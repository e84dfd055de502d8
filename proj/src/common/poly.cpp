#include "ocproc/common/poly.hpp"

#include <Eigen/Dense>

namespace ocproc {

Polynomial fit_polynomial(std::span<const double> x, std::span<const double> y,
                          std::size_t degree) {
    if (x.size() != y.size()) raise(ErrorKind::domain, "polynomial fit: size mismatch");
    if (x.size() < degree + 1)
        raise(ErrorKind::insufficient_data, "polynomial fit: fewer points than coefficients");
    Eigen::MatrixXd A(x.size(), degree + 1);
    Eigen::VectorXd b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double t = 1.0;
        for (std::size_t j = 0; j <= degree; ++j) {
            A(Eigen::Index(i), Eigen::Index(j)) = t;
            t *= x[i];
        }
        b(Eigen::Index(i)) = y[i];
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    std::vector<double> coeffs(degree + 1);
    for (std::size_t j = 0; j <= degree; ++j) coeffs[j] = c(Eigen::Index(j));
    return Polynomial(std::move(coeffs));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    Polynomial p = fit_polynomial(x, y, 1);
    LineFit f;
    f.intercept = p.coeffs()[0];
    f.slope = p.coeffs()[1];
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - p(x[i]);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / double(x.size()));
    return f;
}

}  // namespace ocproc
