#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ocproc/common/error.hpp"

namespace ocproc {

// Dense row-major 2-D grid. Images, frames and product layers all use this.
template <class T>
class Image {
  public:
    Image() = default;
    Image(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

    T* data() noexcept { return v_.data(); }
    const T* data() const noexcept { return v_.data(); }
    std::vector<T>& values() noexcept { return v_; }
    const std::vector<T>& values() const noexcept { return v_; }

    T* row(std::size_t r) noexcept { return v_.data() + r * cols_; }
    const T* row(std::size_t r) const noexcept { return v_.data() + r * cols_; }

    void fill(T value) { v_.assign(v_.size(), value); }

    bool same_shape(const Image& o) const noexcept {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }

    // Bilinear sample at fractional (r, c); clamps to the border.
    double sample(double r, double c) const {
        if (empty()) raise(ErrorKind::domain, "sample of empty image");
        auto clampd = [](double x, double lo, double hi) {
            return x < lo ? lo : (x > hi ? hi : x);
        };
        r = clampd(r, 0.0, double(rows_ - 1));
        c = clampd(c, 0.0, double(cols_ - 1));
        std::size_t r0 = std::size_t(r), c0 = std::size_t(c);
        std::size_t r1 = r0 + 1 < rows_ ? r0 + 1 : r0;
        std::size_t c1 = c0 + 1 < cols_ ? c0 + 1 : c0;
        double fr = r - double(r0), fc = c - double(c0);
        double v00 = double((*this)(r0, c0)), v01 = double((*this)(r0, c1));
        double v10 = double((*this)(r1, c0)), v11 = double((*this)(r1, c1));
        return v00 * (1 - fr) * (1 - fc) + v01 * (1 - fr) * fc + v10 * fr * (1 - fc) +
               v11 * fr * fc;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> v_;
};

using Raster = Image<double>;
using MaskImage = Image<std::uint8_t>;
using CountImage = Image<std::uint16_t>;

}  // namespace ocproc
