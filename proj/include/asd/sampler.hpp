#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "asd/plane.hpp"
#include "asd/schedule.hpp"
#include "asd/tiling.hpp"
#include "asd/toy_model.hpp"

namespace asd {

enum class Strategy { full, tiled_disjoint, tiled_explicit, tiled_implicit };
enum class OffsetMode { fixed, random };
enum class SamplerKind { ddim, ddpm };

/// Accepts the table vocabulary "w/o", "explicit", "implicit" as well as
/// "full", "disjoint", and the enum names.
Strategy parse_strategy(std::string_view name);
std::string_view to_string(Strategy s);
OffsetMode parse_offset_mode(std::string_view name);
std::string_view to_string(OffsetMode m);
SamplerKind parse_sampler_kind(std::string_view name);
std::string_view to_string(SamplerKind k);

struct SampleConfig {
    Strategy strategy = Strategy::full;
    int tile_h = 64;
    int tile_w = 64;
    /// Explicit strategy only.
    int overlap = 0;
    /// Implicit strategy only: offsets are drawn from [0, offset_range).
    int offset_range = 0;
    OffsetMode offset_mode = OffsetMode::random;
    int steps = kDefaultGenerationSteps;
    SamplerKind sampler = SamplerKind::ddim;
    double eta = 0.0;
    std::uint64_t seed = 0;
    /// Tiles of one step evaluated concurrently; commits stay in raster order.
    int workers = 1;

    /// Throws ConfigError for out-of-range values that do not depend on the canvas.
    void validate() const;
    friend bool operator==(const SampleConfig&, const SampleConfig&) = default;
};

struct RunStats {
    long denoiser_invocations = 0;
    double wall_time_s = 0.0;
    std::vector<int> timesteps;
    /// One entry per executed step for tiled strategies, empty for full.
    std::vector<Offset> per_step_offsets;
};

nlohmann::json to_json(const RunStats& stats);
/// CSV "step_index,t,dx,dy".
void write_offsets_csv(std::ostream& out, const RunStats& stats);

struct SampleResult {
    Plane latent;
    RunStats stats;
};

/// Offset used at position `step_index` (0-based) of the step sequence for
/// the implicit strategy. The first step is unshifted; later steps use the
/// range midpoint (fixed) or a draw from the (seed, tile_offset, t) stream
/// (random).
Offset implicit_offset(const SampleConfig& cfg, int step_index, int t);

/// The canvas plan the sampler uses for step `step_index`.
TilePlan plan_for_step(const SampleConfig& cfg, int canvas_h, int canvas_w, int step_index, int t);

/// Step sequence: sampling_timesteps(T, cfg.steps) restricted to t <= start_step.
std::vector<int> step_sequence(const NoiseSchedule& sched, const SampleConfig& cfg, int start_step);

/// Standard-normal latent from the (seed, initial_latent) stream.
Plane initial_latent(int height, int width, int channels, std::uint64_t seed);

/// Reverse diffusion with one whole-canvas denoiser call per step, starting
/// from initial_latent(). cfg.strategy must be full.
SampleResult sample_full(int height, int width, int channels, const DenoiserSpec& denoiser,
                         const NoiseSchedule& sched, const SampleConfig& cfg);

/// Tiled reverse diffusion from `init` at `start_step` (0 means T).
///
/// Every step reads tiles from the previous latent. Disjoint and implicit
/// tiles are written back in raster order, later tiles overwriting earlier
/// ones, and pixels outside every tile keep their previous value. Explicit
/// tiles are averaged with blend_weights. Per-step noise comes from the
/// (seed, step_noise, t) stream at canvas resolution, so every strategy sees
/// the same noise field.
SampleResult sample_tiled(const Plane& init, const DenoiserSpec& denoiser, const NoiseSchedule& sched,
                          const SampleConfig& cfg, int start_step = 0);

/// Tiled sampling from initial_latent().
SampleResult sample_tiled(int height, int width, int channels, const DenoiserSpec& denoiser,
                          const NoiseSchedule& sched, const SampleConfig& cfg);

/// Called after each step with its 0-based index, timestep and the new latent.
using StepObserver = std::function<void(int step_index, int t, const Plane& latent)>;

/// Any strategy from a given latent (full included).
SampleResult sample_from(const Plane& init, const DenoiserSpec& denoiser, const NoiseSchedule& sched,
                         const SampleConfig& cfg, int start_step = 0, const StepObserver& observer = {});

struct UpscaleResult {
    Plane image;
    RunStats stats;
    int start_step = 0;
};

/// Super-resolution: bilinear upsample by `scale`, encode with `factor`,
/// condition the prior mean on that latent, noise it to ceil(strength * T),
/// denoise with cfg.strategy, decode. Output is exactly scale x input.
UpscaleResult upscale_fstd(const Plane& image, int scale, const DenoiserSpec& denoiser,
                           const NoiseSchedule& sched, const SampleConfig& cfg, double strength = 1.0,
                           int factor = 4);

/// Same, with the default linear schedule of cfg.steps steps.
UpscaleResult upscale_fstd(const Plane& image, int scale, const DenoiserSpec& denoiser,
                           const SampleConfig& cfg, double strength = 1.0, int factor = 4);

}  // namespace asd
