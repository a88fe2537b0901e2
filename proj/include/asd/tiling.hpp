#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "asd/plane.hpp"

namespace asd {

/// Tile rectangle in latent pixels, top-left (x, y).
struct TileRect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    friend bool operator==(const TileRect&, const TileRect&) = default;
};

/// Per-step grid shift in latent pixels.
struct Offset {
    int dx = 0;
    int dy = 0;

    friend bool operator==(const Offset&, const Offset&) = default;
};

/// One step's tiling of an H x W latent canvas.
///
/// `tiles` are in raster order (row-major over tile rows). When tiles
/// overlap, the later tile wins on write. `shifted_mask` is the union of the
/// tiles and `constant_mask` its complement: the pixels that keep their
/// previous-step value.
struct TilePlan {
    int canvas_h = 0;
    int canvas_w = 0;
    int tile_h = 0;
    int tile_w = 0;
    std::vector<TileRect> tiles;
    Offset offset;
    Mask shifted_mask;
    Mask constant_mask;
};

/// Tiles at multiples of the tile size; a last start that would overflow is
/// clamped to (axis - tile).
TilePlan plan_disjoint(int canvas_h, int canvas_w, int tile_h, int tile_w);

/// floor(W_image / (W_tile - overlap) * H_image / (H_tile - overlap)),
/// evaluated exactly in integer arithmetic.
std::int64_t n_tiles_explicit(std::int64_t image_w, std::int64_t image_h, std::int64_t tile_w,
                              std::int64_t tile_h, std::int64_t overlap);

/// Tiles at stride (tile - overlap), last start clamped to (axis - tile).
TilePlan plan_explicit(int canvas_h, int canvas_w, int tile_h, int tile_w, int overlap);

/// Disjoint grid shifted by `offset`. The number of starts per axis equals
/// the zero-offset plan's; each start is clamped to (axis - tile), so the
/// left/top margins of width dx/dy form the constant region.
TilePlan plan_shifted(int canvas_h, int canvas_w, int tile_h, int tile_w, Offset offset);

/// Per-tile weights (tile_h x tile_w x 1) equal to 1 / coverage, so the
/// weights of every canvas pixel sum to 1 over the tiles covering it.
std::vector<Plane> blend_weights(const TilePlan& plan);

/// Start positions along one axis for the three strategies.
std::vector<int> axis_starts_disjoint(int axis, int tile);
std::vector<int> axis_starts_explicit(int axis, int tile, int overlap);
std::vector<int> axis_starts_shifted(int axis, int tile, int shift);

/// Alternating run lengths over the row-major bits, starting with a run of
/// zeros (possibly of length 0).
std::vector<std::int64_t> mask_to_rle(const Mask& mask);
Mask mask_from_rle(int height, int width, const std::vector<std::int64_t>& runs);

nlohmann::json plan_to_json(const TilePlan& plan);

}  // namespace asd
