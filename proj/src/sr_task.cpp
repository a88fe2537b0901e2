#include "asd/sr_task.hpp"

#include <cmath>

#include "asd/image_ops.hpp"
#include "asd/rng.hpp"

namespace asd {

DenoiserSpec SrTask::default_denoiser() {
    DenoiserSpec spec;
    spec.kind = DenoiserKind::correlated_tile_limited;
    spec.prior.sigma = 0.5;
    spec.prior.kernel = gaussian_kernel(6, 2.0);
    spec.prior.boundary = BoundaryMode::reflect;
    spec.tile_pad = 0;
    return spec;
}

namespace {

// Circular separable blur of one channel, in place.
void blur_circular(std::vector<double>& v, int h, int w, const std::vector<double>& k) {
    const int r = static_cast<int>(k.size()) / 2;
    std::vector<double> tmp(v.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int j = -r; j <= r; ++j) s += k[static_cast<std::size_t>(j + r)] * v[static_cast<std::size_t>(y) * w + ((x + j) % w + w) % w];
            tmp[static_cast<std::size_t>(y) * w + x] = s;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int j = -r; j <= r; ++j) s += k[static_cast<std::size_t>(j + r)] * tmp[static_cast<std::size_t>(((y + j) % h + h) % h) * w + x];
            v[static_cast<std::size_t>(y) * w + x] = s;
        }
    }
}

}  // namespace

Plane sr_ground_truth(const SrTask& task, std::uint64_t seed) {
    const int n = task.hr_size;
    const auto kernel = gaussian_kernel(static_cast<int>(std::ceil(3.0 * task.gt_blur)), task.gt_blur);
    double k2 = 0.0;
    for (double t : kernel) k2 += t * t;
    // Separable blur of unit white noise has variance (sum k^2)^2.
    const double norm = 1.0 / k2;
    Rng rng = Rng::for_purpose(seed, StreamPurpose::fixture);
    Plane out(n, n, 3);
    std::vector<double> field(static_cast<std::size_t>(n) * n);
    for (int c = 0; c < 3; ++c) {
        for (auto& v : field) v = rng.normal();
        blur_circular(field, n, n, kernel);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                out.at(y, x, c) = 0.5 + task.gt_std * norm * field[static_cast<std::size_t>(y) * n + x];
            }
        }
    }
    clamp_inplace(out, 0.0, 1.0);
    return out;
}

SrOutcome run_sr_case(const SrTask& task, const SampleConfig& cfg, std::uint64_t gt_seed) {
    if (task.hr_size % task.scale != 0) throw DimensionError("hr_size must be divisible by scale");
    const Plane gt = sr_ground_truth(task, gt_seed);
    const Plane lr = downsample_area(gt, task.scale);
    const NoiseSchedule sched = make_linear_schedule(task.schedule_steps);
    SampleConfig run_cfg = cfg;
    if (run_cfg.sampler == SamplerKind::ddpm) run_cfg.steps = task.schedule_steps;

    UpscaleResult up = upscale_fstd(lr, task.scale, task.denoiser, sched, run_cfg, task.strength, task.latent_factor);
    SrOutcome out;
    out.psnr_y = psnr_y(up.image, gt);
    out.ssim = ssim(up.image, gt);
    out.bilinear_psnr_y = psnr_y(resize_bilinear(lr, gt.height(), gt.width()), gt);
    const int lh = gt.height() / task.latent_factor;
    const int lw = gt.width() / task.latent_factor;
    const int th = cfg.strategy == Strategy::full ? lh : cfg.tile_h;
    const int tw = cfg.strategy == Strategy::full ? lw : cfg.tile_w;
    out.seam = seam_score(up.image, plan_disjoint(lh, lw, th, tw), task.latent_factor);
    out.stats = std::move(up.stats);
    out.image = std::move(up.image);
    return out;
}

}  // namespace asd
