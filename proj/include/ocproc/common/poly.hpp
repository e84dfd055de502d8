#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ocproc/common/error.hpp"

namespace ocproc {

// Polynomial with ascending coefficients: p(x) = c0 + c1 x + c2 x^2 + ...
class Polynomial {
  public:
    Polynomial() : c_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(0.0);
    }

    static Polynomial identity() { return Polynomial({0.0, 1.0}); }

    double operator()(double x) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    double derivative_at(double x) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 1;) acc = acc * x + double(i) * c_[i];
        return acc;
    }

    // Solves p(x) = y by Newton from x0; the calibration polynomials are
    // near-identity so this converges in a handful of steps.
    double invert(double y, double x0, double tol = 1e-14, int max_iter = 40) const {
        double x = x0;
        for (int it = 0; it < max_iter; ++it) {
            double f = (*this)(x)-y;
            double d = derivative_at(x);
            if (d == 0.0) break;
            double step = f / d;
            x -= step;
            if (std::abs(step) <= tol * (1.0 + std::abs(x))) return x;
        }
        raise(ErrorKind::convergence, "polynomial inversion did not converge");
    }

    std::size_t degree() const { return c_.size() - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    std::vector<double>& coeffs() { return c_; }

    bool is_identity() const {
        if (c_.size() < 2 || c_[0] != 0.0 || c_[1] != 1.0) return false;
        for (std::size_t i = 2; i < c_.size(); ++i)
            if (c_[i] != 0.0) return false;
        return true;
    }

  private:
    std::vector<double> c_;
};

// Least-squares polynomial fit of the given degree (implemented in poly.cpp
// with Eigen's column-pivoting QR).
Polynomial fit_polynomial(std::span<const double> x, std::span<const double> y,
                          std::size_t degree);

// Least-squares straight line y = a + b x; returns {intercept, slope}.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double residual_rms = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace ocproc
