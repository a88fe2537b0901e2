#pragma once

#include <cstdint>
#include <string>

#include "asd/plane.hpp"

namespace asd {

/// 8-bit code for v in [0, 1]: round half away from zero of 255 v.
/// Values outside [0, 1] are clamped first.
std::uint8_t quantize_unit(double v) noexcept;

/// Reads an 8-bit PNG as an H x W x 3 plane with values k / 255.
/// Grayscale and palette images are expanded to RGB, alpha is dropped.
/// 16-bit images are rejected with IoError.
Plane read_image(const std::string& path);

/// Writes a 1- or 3-channel plane as 8-bit RGB (gray is replicated).
void write_image(const std::string& path, const Plane& image);

}  // namespace asd
