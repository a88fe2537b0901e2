#pragma once

#include <cstdint>
#include <vector>

#include "asd/metrics.hpp"
#include "asd/plane.hpp"
#include "asd/sampler.hpp"
#include "asd/toy_model.hpp"

namespace asd {

/// Synthetic super-resolution benchmark. A smooth RGB ground truth is drawn
/// per seed, area-downsampled by `scale`, and upscaled back with
/// upscale_fstd under a correlated tile-limited denoiser.
struct SrTask {
    int hr_size = 256;
    int scale = 4;
    int latent_factor = 1;
    /// Ground truth per channel: 0.5 + gt_std * (unit-variance blurred
    /// white noise), clamped to [0, 1].
    double gt_std = 0.15;
    double gt_blur = 3.0;
    DenoiserSpec denoiser = default_denoiser();
    int schedule_steps = kDefaultUpscaleSteps;
    double strength = 1.0;

    static DenoiserSpec default_denoiser();
};

/// Ground-truth HR image for `seed` from the fixture stream.
Plane sr_ground_truth(const SrTask& task, std::uint64_t seed);

struct SrOutcome {
    double psnr_y = 0.0;
    double ssim = 0.0;
    SeamReport seam;
    double bilinear_psnr_y = 0.0;
    RunStats stats;
    Plane image;
};

/// Runs one SR case. `cfg.seed` seeds the sampler; the ground truth uses
/// `gt_seed`. Seams are measured on the step-0 plan of cfg's tile grid.
SrOutcome run_sr_case(const SrTask& task, const SampleConfig& cfg, std::uint64_t gt_seed);

}  // namespace asd
