#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asd/plane.hpp"
#include "asd/tiling.hpp"

namespace asd {

inline constexpr double kPsnrCap = 99.0;
inline constexpr int kSsimWindow = 8;

/// PSNR (peak 1.0) of the BT.601 luminance. Capped at kPsnrCap when the
/// luminance MSE is below 1e-12.
double psnr_y(const Plane& a, const Plane& b);

/// Mean SSIM on luminance over all 8x8 windows (stride 1, uniform weights,
/// population statistics, K1 = 0.01, K2 = 0.03, range 1).
double ssim(const Plane& a, const Plane& b);

struct SeamReport {
    double boundary_grad = 0.0;
    double interior_grad = 0.0;
    double score = 1.0;
    long boundary_pairs = 0;
    long interior_pairs = 0;
    /// Set when the plan has no internal tile edge; score is then 1.
    bool no_boundary = false;
};

/// Each image pixel (y, x) belongs to the tile that owns latent pixel
/// (y / factor, x / factor), later tiles winning, or to no tile. Adjacent
/// pixel pairs with different owners are boundary pairs. Gradients are
/// absolute luminance differences.
SeamReport seam_score(const Plane& image, const TilePlan& plan, int factor = 1);

/// Per-pixel tile owner (-1 outside every tile) at image resolution.
std::vector<int> tile_owner_map(const TilePlan& plan, int factor);

struct MemoryModel {
    double base = 0.0;
    double per_latent_pixel = 0.0;
    double per_active_pixel = 0.0;

    /// Two (side, gigabytes) full-frame anchors for square outputs. The
    /// fitted slope is split into a latent share and an active share.
    static MemoryModel calibrate(std::pair<double, double> lo, std::pair<double, double> hi,
                                 double latent_share = 0.01);
};

/// Peak memory in gigabytes for an H x W output. Without a tile the whole
/// canvas is active; with one only the tile area is.
double estimate_peak_memory(const MemoryModel& model, double height, double width,
                            std::optional<std::pair<double, double>> tile = std::nullopt);

/// Calibrated to full-frame 17.45 G at 1024^2 and 31.69 G at 2048^2.
MemoryModel default_memory_model();

/// Largest square side whose full-frame estimate fits in `budget_g`.
double max_full_side(const MemoryModel& model, double budget_g);

/// One line of the metrics report. Unset optionals print as empty fields.
struct MetricsRow {
    std::string run_id;
    std::string strategy;
    std::optional<double> psnr_y;
    std::optional<double> ssim;
    std::optional<double> seam_score;
    long invocations = 0;
    double wall_time_s = 0.0;
    std::optional<double> est_memory_g;
    /// Empty on success.
    std::string error;
};

/// "run_id,strategy,psnr_y,ssim,seam_score,invocations,wall_time_s,est_memory_g,error"
void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const MetricsRow& row);

}  // namespace asd
