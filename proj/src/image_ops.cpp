#include "asd/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace asd {

namespace {

struct Tap {
    int lo;
    int hi;
    double frac;
};

std::vector<Tap> bilinear_taps(int in, int out) {
    std::vector<Tap> taps(static_cast<std::size_t>(out));
    const double scale = static_cast<double>(in) / out;
    for (int i = 0; i < out; ++i) {
        double src = (i + 0.5) * scale - 0.5;
        src = std::clamp(src, 0.0, static_cast<double>(in - 1));
        const int lo = static_cast<int>(std::floor(src));
        const int hi = std::min(lo + 1, in - 1);
        taps[static_cast<std::size_t>(i)] = {lo, hi, src - lo};
    }
    return taps;
}

}  // namespace

Plane resize_bilinear(const Plane& image, int height, int width) {
    if (height < 1 || width < 1) {
        throw DimensionError("resize target must be positive, got " + std::to_string(height) + "x" +
                             std::to_string(width));
    }
    if (height == image.height() && width == image.width()) return image;

    const auto ty = bilinear_taps(image.height(), height);
    const auto tx = bilinear_taps(image.width(), width);
    const int channels = image.channels();
    Plane out(height, width, channels);
    for (int y = 0; y < height; ++y) {
        const Tap& a = ty[static_cast<std::size_t>(y)];
        for (int x = 0; x < width; ++x) {
            const Tap& b = tx[static_cast<std::size_t>(x)];
            for (int c = 0; c < channels; ++c) {
                const double top = image.at(a.lo, b.lo, c) * (1.0 - b.frac) + image.at(a.lo, b.hi, c) * b.frac;
                const double bot = image.at(a.hi, b.lo, c) * (1.0 - b.frac) + image.at(a.hi, b.hi, c) * b.frac;
                out.at(y, x, c) = top * (1.0 - a.frac) + bot * a.frac;
            }
        }
    }
    return out;
}

Plane downsample_area(const Plane& image, int factor) {
    if (factor < 1) throw DimensionError("downsample factor must be >= 1");
    if (image.height() % factor != 0 || image.width() % factor != 0) {
        throw DimensionError("image " + std::to_string(image.height()) + "x" +
                             std::to_string(image.width()) + " not divisible by factor " +
                             std::to_string(factor));
    }
    if (factor == 1) return image;
    const int h = image.height() / factor;
    const int w = image.width() / factor;
    const int channels = image.channels();
    const double inv = 1.0 / (static_cast<double>(factor) * factor);
    Plane out(h, w, channels);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            for (int c = 0; c < channels; ++c) out.at(y / factor, x / factor, c) += image.at(y, x, c);
        }
    }
    for (auto& v : out.data()) v *= inv;
    return out;
}

Plane luminance(const Plane& image) {
    if (image.channels() == 1) return image;
    if (image.channels() != 3) {
        throw DimensionError("luminance needs 1 or 3 channels, got " + std::to_string(image.channels()));
    }
    Plane out(image.height(), image.width(), 1);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.at(y, x) = kLumaR * image.at(y, x, 0) + kLumaG * image.at(y, x, 1) +
                           kLumaB * image.at(y, x, 2);
        }
    }
    return out;
}

void clamp_inplace(Plane& plane, double lo, double hi) {
    for (auto& v : plane.data()) v = std::clamp(v, lo, hi);
}

}  // namespace asd
