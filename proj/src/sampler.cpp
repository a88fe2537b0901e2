#include "asd/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

#include "asd/image_ops.hpp"
#include "asd/rng.hpp"

namespace asd {

Strategy parse_strategy(std::string_view name) {
    if (name == "full") return Strategy::full;
    if (name == "w/o" || name == "disjoint" || name == "tiled_disjoint") return Strategy::tiled_disjoint;
    if (name == "explicit" || name == "tiled_explicit") return Strategy::tiled_explicit;
    if (name == "implicit" || name == "tiled_implicit") return Strategy::tiled_implicit;
    throw ConfigError("unknown strategy '" + std::string(name) + "' (full | w/o | explicit | implicit)");
}

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::full: return "full";
        case Strategy::tiled_disjoint: return "w/o";
        case Strategy::tiled_explicit: return "explicit";
        case Strategy::tiled_implicit: return "implicit";
    }
    return "unknown";
}

OffsetMode parse_offset_mode(std::string_view name) {
    if (name == "fixed") return OffsetMode::fixed;
    if (name == "random") return OffsetMode::random;
    throw ConfigError("unknown offset mode '" + std::string(name) + "' (fixed | random)");
}

std::string_view to_string(OffsetMode m) { return m == OffsetMode::fixed ? "fixed" : "random"; }

SamplerKind parse_sampler_kind(std::string_view name) {
    if (name == "ddim") return SamplerKind::ddim;
    if (name == "ddpm") return SamplerKind::ddpm;
    throw ConfigError("unknown sampler '" + std::string(name) + "' (ddim | ddpm)");
}

std::string_view to_string(SamplerKind k) { return k == SamplerKind::ddim ? "ddim" : "ddpm"; }

void SampleConfig::validate() const {
    if (steps < 1) throw ConfigError("steps must be >= 1");
    if (tile_h < 1 || tile_w < 1) throw ConfigError("tile dimensions must be positive");
    if (eta < 0.0) throw ConfigError("eta must be >= 0");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (overlap < 0 || offset_range < 0) throw ConfigError("overlap and offset_range must be >= 0");
    const int min_tile = std::min(tile_h, tile_w);
    if (strategy == Strategy::tiled_explicit && overlap >= min_tile) {
        throw ConfigError("overlap " + std::to_string(overlap) + " must be smaller than the tile");
    }
    if (strategy == Strategy::tiled_implicit && offset_range >= min_tile) {
        throw ConfigError("offset_range " + std::to_string(offset_range) + " must be smaller than the tile");
    }
}

nlohmann::json to_json(const RunStats& stats) {
    nlohmann::json offsets = nlohmann::json::array();
    for (const auto& o : stats.per_step_offsets) offsets.push_back({o.dx, o.dy});
    return {
        {"denoiser_invocations", stats.denoiser_invocations},
        {"wall_time_s", stats.wall_time_s},
        {"timesteps", stats.timesteps},
        {"per_step_offsets", offsets},
    };
}

void write_offsets_csv(std::ostream& out, const RunStats& stats) {
    out << "step_index,t,dx,dy\n";
    for (std::size_t i = 0; i < stats.per_step_offsets.size(); ++i) {
        const auto& o = stats.per_step_offsets[i];
        out << i << ',' << stats.timesteps.at(i) << ',' << o.dx << ',' << o.dy << '\n';
    }
}

Offset implicit_offset(const SampleConfig& cfg, int step_index, int t) {
    if (step_index == 0 || cfg.offset_range == 0) return {};
    if (cfg.offset_mode == OffsetMode::fixed) return {cfg.offset_range / 2, cfg.offset_range / 2};
    Rng rng = Rng::for_purpose(cfg.seed, StreamPurpose::tile_offset, static_cast<std::uint64_t>(t));
    const auto range = static_cast<std::uint32_t>(cfg.offset_range);
    const int dx = static_cast<int>(rng.bounded(range));
    const int dy = static_cast<int>(rng.bounded(range));
    return {dx, dy};
}

TilePlan plan_for_step(const SampleConfig& cfg, int canvas_h, int canvas_w, int step_index, int t) {
    switch (cfg.strategy) {
        case Strategy::full: return plan_disjoint(canvas_h, canvas_w, canvas_h, canvas_w);
        case Strategy::tiled_disjoint: return plan_disjoint(canvas_h, canvas_w, cfg.tile_h, cfg.tile_w);
        case Strategy::tiled_explicit:
            return plan_explicit(canvas_h, canvas_w, cfg.tile_h, cfg.tile_w, cfg.overlap);
        case Strategy::tiled_implicit:
            return plan_shifted(canvas_h, canvas_w, cfg.tile_h, cfg.tile_w, implicit_offset(cfg, step_index, t));
    }
    throw ConfigError("unhandled strategy");
}

std::vector<int> step_sequence(const NoiseSchedule& sched, const SampleConfig& cfg, int start_step) {
    if (start_step == 0) start_step = sched.steps();
    if (start_step < 1 || start_step > sched.steps()) throw OrderingError("start step outside [1, T]");
    if (cfg.sampler == SamplerKind::ddpm && cfg.steps != sched.steps()) {
        throw ConfigError("ddpm sampling needs steps equal to the schedule length");
    }
    auto seq = sampling_timesteps(sched.steps(), cfg.steps);
    std::erase_if(seq, [start_step](int t) { return t > start_step; });
    if (seq.empty()) throw OrderingError("no sampling step at or below the start step");
    return seq;
}

Plane initial_latent(int height, int width, int channels, std::uint64_t seed) {
    Plane z(height, width, channels);
    Rng rng = Rng::for_purpose(seed, StreamPurpose::initial_latent);
    for (auto& v : z.data()) v = rng.normal();
    return z;
}

namespace {

bool needs_step_noise(const SampleConfig& cfg, int t) {
    return cfg.sampler == SamplerKind::ddpm ? t > 1 : cfg.eta > 0.0;
}

Plane step_noise(const Plane& like, std::uint64_t seed, int t) {
    Plane n(like.height(), like.width(), like.channels());
    Rng rng = Rng::for_purpose(seed, StreamPurpose::step_noise, static_cast<std::uint64_t>(t));
    for (auto& v : n.data()) v = rng.normal();
    return n;
}

struct StepContext {
    const DenoiserSpec& denoiser;
    const NoiseSchedule& sched;
    const SampleConfig& cfg;
    const Plane& latent;
    const Plane* noise;
    int t;
    int t_prev;
};

// Denoises one tile and applies the configured update. Reads only `latent`.
Plane advance_tile(const StepContext& ctx, const TileRect& r) {
    const Plane eps = predict_noise(ctx.denoiser, ctx.latent, r, ctx.t, ctx.sched);
    const bool whole = r.x == 0 && r.y == 0 && r.w == ctx.latent.width() && r.h == ctx.latent.height();
    const Plane z = whole ? ctx.latent : ctx.latent.crop(r.y, r.x, r.h, r.w);
    Plane noise_tile;
    if (ctx.noise) noise_tile = whole ? *ctx.noise : ctx.noise->crop(r.y, r.x, r.h, r.w);
    if (ctx.cfg.sampler == SamplerKind::ddpm) {
        if (!ctx.noise) noise_tile = Plane(z.height(), z.width(), z.channels());
        return ddpm_step(z, eps, ctx.t, ctx.sched, noise_tile);
    }
    return ddim_step(z, eps, ctx.t, ctx.t_prev, ctx.sched, ctx.cfg.eta, ctx.noise ? &noise_tile : nullptr);
}

std::vector<Plane> advance_tiles(const StepContext& ctx, const std::vector<TileRect>& tiles) {
    std::vector<Plane> outs(tiles.size());
    const int workers = std::min<int>(ctx.cfg.workers, static_cast<int>(tiles.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tiles.size(); ++i) outs[i] = advance_tile(ctx, tiles[i]);
        return outs;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = static_cast<std::size_t>(w); i < tiles.size();
                         i += static_cast<std::size_t>(workers)) {
                        outs[i] = advance_tile(ctx, tiles[i]);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return outs;
}

SampleResult run(const Plane& init, const DenoiserSpec& denoiser, const NoiseSchedule& sched,
                 const SampleConfig& cfg, int start_step, const StepObserver& observer = {}) {
    cfg.validate();
    denoiser.validate();
    if (!init.all_finite()) throw ConfigError("initial latent contains non-finite values");
    const int H = init.height();
    const int W = init.width();
    if (cfg.strategy != Strategy::full && (cfg.tile_h > H || cfg.tile_w > W)) {
        throw DimensionError("tile " + std::to_string(cfg.tile_h) + "x" + std::to_string(cfg.tile_w) +
                             " larger than canvas " + std::to_string(H) + "x" + std::to_string(W));
    }
    if (denoiser.prior.mean_field) denoiser.prior.mean_field->require_same_shape(init, "prior mean field");

    const auto seq = step_sequence(sched, cfg, start_step);
    SampleResult result;
    result.latent = init;
    result.stats.timesteps = seq;

    // Plans that do not change across steps are built once.
    const bool per_step_plan = cfg.strategy == Strategy::tiled_implicit;
    TilePlan fixed_plan;
    std::vector<Plane> weights;
    if (!per_step_plan) {
        fixed_plan = plan_for_step(cfg, H, W, 0, seq.front());
        if (cfg.strategy == Strategy::tiled_explicit) weights = blend_weights(fixed_plan);
    }

    const auto started = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const int t = seq[k];
        const int t_prev = k + 1 < seq.size() ? seq[k + 1] : 0;
        Plane noise;
        const bool noisy = needs_step_noise(cfg, t);
        if (noisy) noise = step_noise(result.latent, cfg.seed, t);

        TilePlan step_plan;
        if (per_step_plan) step_plan = plan_for_step(cfg, H, W, static_cast<int>(k), t);
        const TilePlan& plan = per_step_plan ? step_plan : fixed_plan;

        const StepContext ctx{denoiser, sched, cfg, result.latent, noisy ? &noise : nullptr, t, t_prev};
        std::vector<Plane> outs = advance_tiles(ctx, plan.tiles);
        result.stats.denoiser_invocations += static_cast<long>(plan.tiles.size());

        if (cfg.strategy == Strategy::tiled_explicit) {
            Plane next(H, W, init.channels(), 0.0);
            for (std::size_t i = 0; i < plan.tiles.size(); ++i) {
                const auto& r = plan.tiles[i];
                const Plane& w = weights[i];
                const Plane& o = outs[i];
                for (int y = 0; y < r.h; ++y) {
                    for (int x = 0; x < r.w; ++x) {
                        const double wt = w.at(y, x);
                        for (int c = 0; c < o.channels(); ++c) next.at(r.y + y, r.x + x, c) += wt * o.at(y, x, c);
                    }
                }
            }
            result.latent = std::move(next);
        } else if (plan.tiles.size() == 1 && plan.tiles[0].w == W && plan.tiles[0].h == H) {
            result.latent = std::move(outs[0]);
        } else {
            // Constant-region pixels keep their previous value.
            Plane next = result.latent;
            for (std::size_t i = 0; i < plan.tiles.size(); ++i) {
                next.paste(outs[i], plan.tiles[i].y, plan.tiles[i].x);
            }
            result.latent = std::move(next);
        }
        if (cfg.strategy != Strategy::full) result.stats.per_step_offsets.push_back(plan.offset);
        if (observer) observer(static_cast<int>(k), t, result.latent);
    }
    result.stats.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace

SampleResult sample_full(int height, int width, int channels, const DenoiserSpec& denoiser,
                         const NoiseSchedule& sched, const SampleConfig& cfg) {
    if (cfg.strategy != Strategy::full) throw ConfigError("sample_full needs strategy = full");
    return run(initial_latent(height, width, channels, cfg.seed), denoiser, sched, cfg, 0);
}

SampleResult sample_tiled(const Plane& init, const DenoiserSpec& denoiser, const NoiseSchedule& sched,
                          const SampleConfig& cfg, int start_step) {
    if (cfg.strategy == Strategy::full) throw ConfigError("sample_tiled needs a tiled strategy");
    return run(init, denoiser, sched, cfg, start_step);
}

SampleResult sample_tiled(int height, int width, int channels, const DenoiserSpec& denoiser,
                          const NoiseSchedule& sched, const SampleConfig& cfg) {
    return sample_tiled(initial_latent(height, width, channels, cfg.seed), denoiser, sched, cfg, 0);
}

SampleResult sample_from(const Plane& init, const DenoiserSpec& denoiser, const NoiseSchedule& sched,
                         const SampleConfig& cfg, int start_step, const StepObserver& observer) {
    return run(init, denoiser, sched, cfg, start_step, observer);
}

UpscaleResult upscale_fstd(const Plane& image, int scale, const DenoiserSpec& denoiser,
                           const NoiseSchedule& sched, const SampleConfig& cfg, double strength,
                           int factor) {
    if (scale < 1) throw DimensionError("scale must be >= 1");
    if (factor < 1) throw DimensionError("latent factor must be >= 1");
    if (!(strength > 0.0 && strength <= 1.0)) throw ConfigError("strength must lie in (0, 1]");
    const int out_h = image.height() * scale;
    const int out_w = image.width() * scale;
    if (out_h % factor != 0 || out_w % factor != 0) {
        throw DimensionError("upscaled size " + std::to_string(out_h) + "x" + std::to_string(out_w) +
                             " not divisible by latent factor " + std::to_string(factor));
    }
    const Plane upsampled = resize_bilinear(image, out_h, out_w);
    auto latent = std::make_shared<const Plane>(encode(upsampled, factor));

    DenoiserSpec conditioned = denoiser;
    conditioned.prior.mean_field = latent;

    const int start = std::max(1, static_cast<int>(std::ceil(strength * sched.steps() - 1e-9)));
    const Plane eps = initial_latent(latent->height(), latent->width(), latent->channels(), cfg.seed);
    const Plane noisy = add_noise(*latent, eps, start, sched);

    SampleResult sampled = sample_from(noisy, conditioned, sched, cfg, start);
    UpscaleResult out;
    out.image = decode(sampled.latent, factor);
    out.stats = std::move(sampled.stats);
    out.start_step = start;
    return out;
}

UpscaleResult upscale_fstd(const Plane& image, int scale, const DenoiserSpec& denoiser,
                           const SampleConfig& cfg, double strength, int factor) {
    return upscale_fstd(image, scale, denoiser, make_linear_schedule(cfg.steps), cfg, strength, factor);
}

}  // namespace asd
