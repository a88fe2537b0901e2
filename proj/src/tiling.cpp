#include "asd/tiling.hpp"

#include <algorithm>
#include <string>

namespace asd {

namespace {

void require_fits(int canvas_h, int canvas_w, int tile_h, int tile_w) {
    if (tile_h < 1 || tile_w < 1 || canvas_h < 1 || canvas_w < 1) {
        throw DimensionError("tile and canvas sizes must be positive");
    }
    if (tile_h > canvas_h || tile_w > canvas_w) {
        throw DimensionError("tile " + std::to_string(tile_h) + "x" + std::to_string(tile_w) +
                             " larger than canvas " + std::to_string(canvas_h) + "x" +
                             std::to_string(canvas_w));
    }
}

TilePlan assemble(int canvas_h, int canvas_w, int tile_h, int tile_w, const std::vector<int>& ys,
                  const std::vector<int>& xs, Offset offset) {
    TilePlan plan;
    plan.canvas_h = canvas_h;
    plan.canvas_w = canvas_w;
    plan.tile_h = tile_h;
    plan.tile_w = tile_w;
    plan.offset = offset;
    plan.shifted_mask = Mask(canvas_h, canvas_w, false);
    for (int y : ys) {
        for (int x : xs) {
            plan.tiles.push_back({x, y, tile_w, tile_h});
            plan.shifted_mask.fill_rect(y, x, tile_h, tile_w, true);
        }
    }
    plan.constant_mask = plan.shifted_mask.complement();
    return plan;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

std::vector<int> axis_starts_disjoint(int axis, int tile) {
    return axis_starts_shifted(axis, tile, 0);
}

std::vector<int> axis_starts_explicit(int axis, int tile, int overlap) {
    const int stride = tile - overlap;
    const int count = ceil_div(axis - tile, stride) + 1;
    std::vector<int> starts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) starts[static_cast<std::size_t>(i)] = std::min(i * stride, axis - tile);
    return starts;
}

std::vector<int> axis_starts_shifted(int axis, int tile, int shift) {
    const int count = ceil_div(axis, tile);
    std::vector<int> starts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        starts[static_cast<std::size_t>(i)] = std::min(shift + i * tile, axis - tile);
    }
    return starts;
}

TilePlan plan_disjoint(int canvas_h, int canvas_w, int tile_h, int tile_w) {
    require_fits(canvas_h, canvas_w, tile_h, tile_w);
    return assemble(canvas_h, canvas_w, tile_h, tile_w, axis_starts_disjoint(canvas_h, tile_h),
                    axis_starts_disjoint(canvas_w, tile_w), {});
}

std::int64_t n_tiles_explicit(std::int64_t image_w, std::int64_t image_h, std::int64_t tile_w,
                              std::int64_t tile_h, std::int64_t overlap) {
    if (overlap < 0) throw ConfigError("overlap must be >= 0");
    if (overlap >= std::min(tile_w, tile_h)) {
        throw ConfigError("overlap " + std::to_string(overlap) + " leaves no stride for tile " +
                          std::to_string(tile_h) + "x" + std::to_string(tile_w));
    }
    // floor((a / b) * (c / d)) == floor(a*c / (b*d)) for positive integers.
    return (image_w * image_h) / ((tile_w - overlap) * (tile_h - overlap));
}

TilePlan plan_explicit(int canvas_h, int canvas_w, int tile_h, int tile_w, int overlap) {
    require_fits(canvas_h, canvas_w, tile_h, tile_w);
    if (overlap < 0 || overlap >= std::min(tile_h, tile_w)) {
        throw ConfigError("overlap " + std::to_string(overlap) + " must lie in [0, min tile dim)");
    }
    return assemble(canvas_h, canvas_w, tile_h, tile_w, axis_starts_explicit(canvas_h, tile_h, overlap),
                    axis_starts_explicit(canvas_w, tile_w, overlap), {});
}

TilePlan plan_shifted(int canvas_h, int canvas_w, int tile_h, int tile_w, Offset offset) {
    require_fits(canvas_h, canvas_w, tile_h, tile_w);
    if (offset.dx < 0 || offset.dx >= tile_w || offset.dy < 0 || offset.dy >= tile_h) {
        throw OffsetError("offset (" + std::to_string(offset.dx) + ", " + std::to_string(offset.dy) +
                          ") outside [0, tile)");
    }
    return assemble(canvas_h, canvas_w, tile_h, tile_w, axis_starts_shifted(canvas_h, tile_h, offset.dy),
                    axis_starts_shifted(canvas_w, tile_w, offset.dx), offset);
}

std::vector<Plane> blend_weights(const TilePlan& plan) {
    std::vector<int> coverage(static_cast<std::size_t>(plan.canvas_h) * plan.canvas_w, 0);
    for (const auto& t : plan.tiles) {
        for (int y = t.y; y < t.y + t.h; ++y) {
            for (int x = t.x; x < t.x + t.w; ++x) ++coverage[static_cast<std::size_t>(y) * plan.canvas_w + x];
        }
    }
    std::vector<Plane> weights;
    weights.reserve(plan.tiles.size());
    for (const auto& t : plan.tiles) {
        Plane w(t.h, t.w, 1);
        for (int y = 0; y < t.h; ++y) {
            for (int x = 0; x < t.w; ++x) {
                w.at(y, x) = 1.0 / coverage[static_cast<std::size_t>(t.y + y) * plan.canvas_w + t.x + x];
            }
        }
        weights.push_back(std::move(w));
    }
    return weights;
}

std::vector<std::int64_t> mask_to_rle(const Mask& mask) {
    std::vector<std::int64_t> runs;
    std::uint8_t current = 0;
    std::int64_t length = 0;
    for (auto b : mask.bits()) {
        if (b != current) {
            runs.push_back(length);
            current = b;
            length = 0;
        }
        ++length;
    }
    runs.push_back(length);
    return runs;
}

Mask mask_from_rle(int height, int width, const std::vector<std::int64_t>& runs) {
    Mask mask(height, width, false);
    std::int64_t pos = 0;
    bool value = false;
    const std::int64_t total = static_cast<std::int64_t>(height) * width;
    for (auto run : runs) {
        if (run < 0 || pos + run > total) throw DimensionError("mask run lengths exceed mask size");
        for (std::int64_t i = 0; i < run; ++i, ++pos) {
            mask.set(static_cast<int>(pos / width), static_cast<int>(pos % width), value);
        }
        value = !value;
    }
    if (pos != total) throw DimensionError("mask run lengths do not cover the mask");
    return mask;
}

nlohmann::json plan_to_json(const TilePlan& plan) {
    nlohmann::json tiles = nlohmann::json::array();
    for (const auto& t : plan.tiles) tiles.push_back({{"x", t.x}, {"y", t.y}, {"w", t.w}, {"h", t.h}});
    return {
        {"canvas", {plan.canvas_h, plan.canvas_w}},
        {"tile", {plan.tile_h, plan.tile_w}},
        {"offset", {plan.offset.dx, plan.offset.dy}},
        {"tiles", tiles},
        {"shifted_mask_rle", mask_to_rle(plan.shifted_mask)},
        {"constant_mask_rle", mask_to_rle(plan.constant_mask)},
    };
}

}  // namespace asd
