#pragma once

#include "asd/plane.hpp"

namespace asd {

/// Bilinear resample to (height, width) with half-pixel centres
/// (src = (dst + 0.5) * in / out - 0.5, clamped at the borders).
Plane resize_bilinear(const Plane& image, int height, int width);

/// Mean over non-overlapping factor x factor blocks, per channel.
Plane downsample_area(const Plane& image, int factor);

/// BT.601 weights.
inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;

/// Single-channel luminance. A one-channel input is returned unchanged;
/// any count other than 1 or 3 is a DimensionError.
Plane luminance(const Plane& image);

/// Clamps every value to [lo, hi].
void clamp_inplace(Plane& plane, double lo, double hi);

}  // namespace asd
