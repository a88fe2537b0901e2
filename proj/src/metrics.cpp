#include "asd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "asd/image_ops.hpp"

namespace asd {

double psnr_y(const Plane& a, const Plane& b) {
    a.require_same_shape(b, "psnr_y");
    const Plane ya = luminance(a);
    const Plane yb = luminance(b);
    double sum = 0.0;
    for (std::size_t i = 0; i < ya.size(); ++i) {
        const double d = ya.data()[i] - yb.data()[i];
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(ya.size());
    if (mse < 1e-12) return kPsnrCap;
    return 10.0 * std::log10(1.0 / mse);
}

namespace {

// Summed-area table with one row and column of zero padding.
std::vector<double> integral(const Plane& p, auto&& f) {
    const int h = p.height();
    const int w = p.width();
    std::vector<double> s(static_cast<std::size_t>(h + 1) * (w + 1), 0.0);
    for (int y = 0; y < h; ++y) {
        double row = 0.0;
        for (int x = 0; x < w; ++x) {
            row += f(y, x);
            s[static_cast<std::size_t>(y + 1) * (w + 1) + x + 1] = s[static_cast<std::size_t>(y) * (w + 1) + x + 1] + row;
        }
    }
    return s;
}

double box(const std::vector<double>& s, int w, int y, int x, int n) {
    const auto at = [&](int yy, int xx) { return s[static_cast<std::size_t>(yy) * (w + 1) + xx]; };
    return at(y + n, x + n) - at(y, x + n) - at(y + n, x) + at(y, x);
}

}  // namespace

double ssim(const Plane& a, const Plane& b) {
    a.require_same_shape(b, "ssim");
    if (a.height() < kSsimWindow || a.width() < kSsimWindow) {
        throw DimensionError("ssim needs at least " + std::to_string(kSsimWindow) + "x" +
                             std::to_string(kSsimWindow) + " pixels");
    }
    const Plane ya = luminance(a);
    const Plane yb = luminance(b);
    const auto sa = integral(ya, [&](int y, int x) { return ya.at(y, x); });
    const auto sb = integral(yb, [&](int y, int x) { return yb.at(y, x); });
    const auto saa = integral(ya, [&](int y, int x) { return ya.at(y, x) * ya.at(y, x); });
    const auto sbb = integral(yb, [&](int y, int x) { return yb.at(y, x) * yb.at(y, x); });
    const auto sab = integral(ya, [&](int y, int x) { return ya.at(y, x) * yb.at(y, x); });

    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;
    const int n = kSsimWindow;
    const double inv = 1.0 / (n * n);
    const int w = ya.width();
    double total = 0.0;
    long windows = 0;
    for (int y = 0; y + n <= ya.height(); ++y) {
        for (int x = 0; x + n <= w; ++x) {
            const double ma = box(sa, w, y, x, n) * inv;
            const double mb = box(sb, w, y, x, n) * inv;
            const double va = box(saa, w, y, x, n) * inv - ma * ma;
            const double vb = box(sbb, w, y, x, n) * inv - mb * mb;
            const double cov = box(sab, w, y, x, n) * inv - ma * mb;
            total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

std::vector<int> tile_owner_map(const TilePlan& plan, int factor) {
    if (factor < 1) throw DimensionError("seam factor must be >= 1");
    const int h = plan.canvas_h * factor;
    const int w = plan.canvas_w * factor;
    std::vector<int> owner(static_cast<std::size_t>(h) * w, -1);
    for (std::size_t i = 0; i < plan.tiles.size(); ++i) {
        const auto& r = plan.tiles[i];
        for (int y = r.y * factor; y < (r.y + r.h) * factor; ++y) {
            for (int x = r.x * factor; x < (r.x + r.w) * factor; ++x) {
                owner[static_cast<std::size_t>(y) * w + x] = static_cast<int>(i);
            }
        }
    }
    return owner;
}

SeamReport seam_score(const Plane& image, const TilePlan& plan, int factor) {
    if (image.height() != plan.canvas_h * factor || image.width() != plan.canvas_w * factor) {
        throw DimensionError("seam_score: image " + std::to_string(image.height()) + "x" +
                             std::to_string(image.width()) + " does not match plan canvas x" +
                             std::to_string(factor));
    }
    const Plane lum = luminance(image);
    const auto owner = tile_owner_map(plan, factor);
    const int h = lum.height();
    const int w = lum.width();
    SeamReport rep;
    double bsum = 0.0;
    double isum = 0.0;
    const auto visit = [&](int y0, int x0, int y1, int x1) {
        const double g = std::abs(lum.at(y0, x0) - lum.at(y1, x1));
        if (owner[static_cast<std::size_t>(y0) * w + x0] != owner[static_cast<std::size_t>(y1) * w + x1]) {
            bsum += g;
            ++rep.boundary_pairs;
        } else {
            isum += g;
            ++rep.interior_pairs;
        }
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) visit(y, x, y, x + 1);
            if (y + 1 < h) visit(y, x, y + 1, x);
        }
    }
    if (rep.boundary_pairs > 0) rep.boundary_grad = bsum / static_cast<double>(rep.boundary_pairs);
    if (rep.interior_pairs > 0) rep.interior_grad = isum / static_cast<double>(rep.interior_pairs);
    if (rep.boundary_pairs == 0) {
        rep.no_boundary = true;
        rep.score = 1.0;
    } else if (rep.interior_grad < 1e-9) {
        rep.score = 1.0;
    } else {
        rep.score = rep.boundary_grad / rep.interior_grad;
    }
    return rep;
}

MemoryModel MemoryModel::calibrate(std::pair<double, double> lo, std::pair<double, double> hi,
                                   double latent_share) {
    const double a_lo = lo.first * lo.first;
    const double a_hi = hi.first * hi.first;
    if (!(a_hi > a_lo)) throw ConfigError("memory anchors need increasing resolution");
    if (latent_share < 0.0 || latent_share > 1.0) throw ConfigError("latent_share must lie in [0, 1]");
    const double slope = (hi.second - lo.second) / (a_hi - a_lo);
    const double base = lo.second - slope * a_lo;
    if (slope < 0.0 || base < 0.0) throw ConfigError("memory anchors give negative model terms");
    return {base, slope * latent_share, slope * (1.0 - latent_share)};
}

double estimate_peak_memory(const MemoryModel& model, double height, double width,
                            std::optional<std::pair<double, double>> tile) {
    if (!(height > 0.0 && width > 0.0)) throw DimensionError("memory estimate needs positive dims");
    const double area = height * width;
    const double active = tile ? std::min(tile->first, height) * std::min(tile->second, width) : area;
    return model.base + model.per_latent_pixel * area + model.per_active_pixel * active;
}

MemoryModel default_memory_model() { return MemoryModel::calibrate({1024.0, 17.45}, {2048.0, 31.69}); }

double max_full_side(const MemoryModel& model, double budget_g) {
    const double slope = model.per_latent_pixel + model.per_active_pixel;
    if (budget_g <= model.base || slope <= 0.0) return 0.0;
    return std::sqrt((budget_g - model.base) / slope);
}

void write_metrics_header(std::ostream& out) {
    out << "run_id,strategy,psnr_y,ssim,seam_score,invocations,wall_time_s,est_memory_g,error\n";
}

void write_metrics_row(std::ostream& out, const MetricsRow& row) {
    const auto opt = [&out](const std::optional<double>& v) {
        if (v) out << *v;
        out << ',';
    };
    out << row.run_id << ',' << row.strategy << ',';
    opt(row.psnr_y);
    opt(row.ssim);
    opt(row.seam_score);
    out << row.invocations << ',' << row.wall_time_s << ',';
    opt(row.est_memory_g);
    // Errors are free text; keep the row parseable.
    std::string err = row.error;
    for (auto& ch : err) {
        if (ch == ',' || ch == '\n') ch = ';';
    }
    out << err << '\n';
}

}  // namespace asd
