#include "asd/png_io.hpp"

#include <cmath>
#include <vector>

#include <png.h>

namespace asd {

std::uint8_t quantize_unit(double v) noexcept {
    if (!(v > 0.0)) return 0;
    if (v >= 1.0) return 255;
    return static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
}

namespace {

struct ImageGuard {
    png_image* image;
    ~ImageGuard() { png_image_free(image); }
};

}  // namespace

Plane read_image(const std::string& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    ImageGuard guard{&image};
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw IoError(path + ": " + image.message);
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        throw IoError(path + ": unsupported bit depth (only 8-bit PNG is supported)");
    }
    image.format = PNG_FORMAT_RGB;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        throw IoError(path + ": " + image.message);
    }
    const int h = static_cast<int>(image.height);
    const int w = static_cast<int>(image.width);
    Plane out(h, w, 3);
    for (std::size_t i = 0; i < buffer.size(); ++i) out.data()[i] = buffer[i] / 255.0;
    return out;
}

void write_image(const std::string& path, const Plane& image) {
    if (image.channels() != 1 && image.channels() != 3) {
        throw DimensionError("write_image needs 1 or 3 channels, got " + std::to_string(image.channels()));
    }
    const int h = image.height();
    const int w = image.width();
    std::vector<png_byte> buffer(static_cast<std::size_t>(h) * w * 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                const int src = image.channels() == 1 ? 0 : c;
                buffer[(static_cast<std::size_t>(y) * w + x) * 3 + c] = quantize_unit(image.at(y, x, src));
            }
        }
    }
    png_image out{};
    out.version = PNG_IMAGE_VERSION;
    out.width = static_cast<png_uint_32>(w);
    out.height = static_cast<png_uint_32>(h);
    out.format = PNG_FORMAT_RGB;
    ImageGuard guard{&out};
    if (!png_image_write_to_file(&out, path.c_str(), 0, buffer.data(), 0, nullptr)) {
        throw IoError(path + ": " + out.message);
    }
}

}  // namespace asd
