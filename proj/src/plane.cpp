#include "asd/plane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asd {

Plane::Plane(int height, int width, int channels, double fill)
    : height_(height), width_(width), channels_(channels) {
    if (height < 1 || width < 1 || channels < 1) {
        throw DimensionError("plane dimensions must be positive, got " + std::to_string(height) +
                             "x" + std::to_string(width) + "x" + std::to_string(channels));
    }
    data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

void Plane::require_same_shape(const Plane& other, const char* context) const {
    if (!same_shape(other)) {
        throw DimensionError(std::string(context) + ": shape mismatch " +
                             std::to_string(height_) + "x" + std::to_string(width_) + "x" +
                             std::to_string(channels_) + " vs " + std::to_string(other.height_) +
                             "x" + std::to_string(other.width_) + "x" +
                             std::to_string(other.channels_));
    }
}

bool Plane::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Plane Plane::crop(int y, int x, int h, int w) const {
    if (y < 0 || x < 0 || h < 1 || w < 1 || y + h > height_ || x + w > width_) {
        throw DimensionError("crop window outside plane");
    }
    Plane out(h, w, channels_);
    const std::size_t row = static_cast<std::size_t>(w) * channels_;
    for (int r = 0; r < h; ++r) {
        const auto* src = data_.data() + index(y + r, x);
        std::copy(src, src + row, out.data_.data() + static_cast<std::size_t>(r) * row);
    }
    return out;
}

void Plane::paste(const Plane& src, int y, int x) {
    if (src.channels_ != channels_ || y < 0 || x < 0 || y + src.height_ > height_ ||
        x + src.width_ > width_) {
        throw DimensionError("paste window outside plane");
    }
    const std::size_t row = static_cast<std::size_t>(src.width_) * channels_;
    for (int r = 0; r < src.height_; ++r) {
        const auto* from = src.data_.data() + static_cast<std::size_t>(r) * row;
        std::copy(from, from + row, data_.data() + index(y + r, x));
    }
}

void Mask::fill_rect(int y, int x, int h, int w, bool v) {
    const int y1 = std::min(height_, y + h);
    const int x1 = std::min(width_, x + w);
    for (int r = std::max(0, y); r < y1; ++r) {
        for (int c = std::max(0, x); c < x1; ++c) set(r, c, v);
    }
}

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Mask Mask::complement() const {
    Mask out = *this;
    for (auto& b : out.bits_) b = b ? 0 : 1;
    return out;
}

}  // namespace asd
