#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "asd/error.hpp"

namespace asd {

/// Row-major H x W x C array of doubles. Used for images (values in [0,1])
/// and for latents alike.
class Plane {
public:
    Plane() = default;
    Plane(int height, int width, int channels, double fill = 0.0);

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }
    int channels() const noexcept { return channels_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(int y, int x, int c = 0) noexcept { return data_[index(y, x, c)]; }
    double at(int y, int x, int c = 0) const noexcept { return data_[index(y, x, c)]; }

    std::size_t index(int y, int x, int c = 0) const noexcept {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool same_shape(const Plane& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
    }

    /// Throws DimensionError unless shapes agree.
    void require_same_shape(const Plane& other, const char* context) const;

    bool all_finite() const noexcept;

    /// Copy of the h x w window starting at (y, x). Must lie inside the plane.
    Plane crop(int y, int x, int h, int w) const;

    /// Writes `src` into this plane with its top-left at (y, x).
    void paste(const Plane& src, int y, int x);

    friend bool operator==(const Plane& a, const Plane& b) = default;

private:
    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

/// H x W boolean map; 1 marks membership.
class Mask {
public:
    Mask() = default;
    Mask(int height, int width, bool fill = false)
        : height_(height), width_(width),
          bits_(static_cast<std::size_t>(height) * width, fill ? 1 : 0) {}

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }

    bool at(int y, int x) const noexcept {
        return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int y, int x, bool v) noexcept {
        bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
    }
    void fill_rect(int y, int x, int h, int w, bool v);

    std::size_t count() const noexcept;
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    Mask complement() const;

    friend bool operator==(const Mask& a, const Mask& b) = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> bits_;
};

}  // namespace asd
