#include "asd/toy_model.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "asd/image_ops.hpp"
#include "spectral.hpp"

namespace asd {

void GaussianPrior::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("prior sigma must be positive");
    if (!std::isfinite(mean)) throw ConfigError("prior mean must be finite");
    if (kernel.empty()) return;
    if (kernel.size() % 2 == 0) throw ConfigError("correlation kernel length must be odd");
    double sum = 0.0;
    for (double tap : kernel) {
        if (!(tap >= 0.0) || !std::isfinite(tap)) throw ConfigError("correlation kernel taps must be nonnegative");
        sum += tap;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("correlation kernel taps must sum to 1");
}

std::vector<double> gaussian_kernel(int radius, double width) {
    if (radius < 0 || !(width > 0.0)) throw ConfigError("gaussian_kernel needs radius >= 0 and width > 0");
    std::vector<double> taps(2 * static_cast<std::size_t>(radius) + 1);
    for (int i = -radius; i <= radius; ++i) {
        taps[static_cast<std::size_t>(i + radius)] = std::exp(-0.5 * (i * i) / (width * width));
    }
    const double sum = std::accumulate(taps.begin(), taps.end(), 0.0);
    for (auto& t : taps) t /= sum;
    return taps;
}

int param_bucket(int t, int total_steps, int buckets) {
    if (t < 1 || t > total_steps) throw OrderingError("param_bucket: step outside [1, T]");
    return static_cast<int>(static_cast<long long>(t - 1) * buckets / total_steps);
}

DenoiserKind parse_denoiser_kind(std::string_view name) {
    if (name == "iid_exact") return DenoiserKind::iid_exact;
    if (name == "correlated_exact") return DenoiserKind::correlated_exact;
    if (name == "correlated_tile_limited") return DenoiserKind::correlated_tile_limited;
    if (name == "toy_parametric") return DenoiserKind::toy_parametric;
    throw ConfigError("unknown denoiser kind '" + std::string(name) + "'");
}

std::string_view to_string(DenoiserKind kind) {
    switch (kind) {
        case DenoiserKind::iid_exact: return "iid_exact";
        case DenoiserKind::correlated_exact: return "correlated_exact";
        case DenoiserKind::correlated_tile_limited: return "correlated_tile_limited";
        case DenoiserKind::toy_parametric: return "toy_parametric";
    }
    return "unknown";
}

void DenoiserSpec::validate() const {
    prior.validate();
    if (tile_pad < 0) throw ConfigError("tile_pad must be >= 0");
    const bool needs_kernel =
        kind == DenoiserKind::correlated_exact || kind == DenoiserKind::correlated_tile_limited;
    if (needs_kernel && !prior.correlated()) throw ConfigError("correlated denoiser needs a correlation kernel");
    if (kind == DenoiserKind::iid_exact && prior.correlated()) {
        throw ConfigError("iid_exact denoiser cannot use a correlation kernel");
    }
    if (kind == DenoiserKind::toy_parametric) {
        if (params.buckets < 1 || params.values.size() != 2 * static_cast<std::size_t>(params.buckets)) {
            throw ConfigError("toy_parametric needs 2 * buckets parameter values");
        }
        for (double v : params.values) {
            if (!std::isfinite(v)) throw ConfigError("toy_parametric parameters must be finite");
        }
    }
}

namespace {

void require_mean_field_shape(const GaussianPrior& prior, const Plane& canvas) {
    if (prior.mean_field) prior.mean_field->require_same_shape(canvas, "prior mean field");
}

void require_noisy(double alpha_bar) {
    if (!(alpha_bar < 1.0)) throw ConfigError("noise prediction undefined at alpha_bar = 1");
}

int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - i;
}

int wrap_index(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

Plane eps_iid_exact_at(const Plane& z, double alpha_bar, const GaussianPrior& prior) {
    require_noisy(alpha_bar);
    if (prior.correlated()) throw ConfigError("eps_iid_exact requires a prior without correlation kernel");
    require_mean_field_shape(prior, z);
    const double sqrt_ab = std::sqrt(alpha_bar);
    const double gain = std::sqrt(1.0 - alpha_bar) / (alpha_bar * prior.sigma * prior.sigma + 1.0 - alpha_bar);
    Plane out(z.height(), z.width(), z.channels());
    for (int y = 0; y < z.height(); ++y) {
        for (int x = 0; x < z.width(); ++x) {
            for (int c = 0; c < z.channels(); ++c) {
                out.at(y, x, c) = gain * (z.at(y, x, c) - sqrt_ab * prior.mean_at(y, x, c));
            }
        }
    }
    return out;
}

Plane eps_iid_exact(const Plane& z_t, int t, const GaussianPrior& prior, const NoiseSchedule& sched) {
    return eps_iid_exact_at(z_t, sched.alpha_bar(t), prior);
}

Plane eps_correlated_at(const Plane& z, double alpha_bar, const GaussianPrior& prior,
                        const Receptive& receptive) {
    if (!prior.correlated()) throw ConfigError("eps_correlated requires a correlation kernel");
    require_noisy(alpha_bar);
    require_mean_field_shape(prior, z);

    int y0 = 0, x0 = 0, out_h = z.height(), out_w = z.width(), pad = 0;
    if (!receptive.full) {
        const auto& r = receptive.rect;
        if (r.x < 0 || r.y < 0 || r.w < 1 || r.h < 1 || r.x + r.w > z.width() || r.y + r.h > z.height()) {
            throw DimensionError("receptive tile outside canvas");
        }
        if (receptive.pad < 0) throw ConfigError("receptive pad must be >= 0");
        y0 = r.y;
        x0 = r.x;
        out_h = r.h;
        out_w = r.w;
        pad = receptive.pad;
    }
    const int eh = out_h + 2 * pad;
    const int ew = out_w + 2 * pad;
    const auto ph = detail::kernel_power_spectrum(prior.kernel, eh);
    const auto pw = detail::kernel_power_spectrum(prior.kernel, ew);
    const double sqrt_ab = std::sqrt(alpha_bar);
    const double out_gain = std::sqrt(1.0 - alpha_bar);
    const auto map = prior.boundary == BoundaryMode::reflect ? reflect_index : wrap_index;

    std::vector<int> rows(static_cast<std::size_t>(eh));
    std::vector<int> cols(static_cast<std::size_t>(ew));
    for (int i = 0; i < eh; ++i) rows[static_cast<std::size_t>(i)] = map(y0 - pad + i, z.height());
    for (int j = 0; j < ew; ++j) cols[static_cast<std::size_t>(j)] = map(x0 - pad + j, z.width());

    Plane out(out_h, out_w, z.channels());
    std::vector<double> field(static_cast<std::size_t>(eh) * ew);
    for (int c = 0; c < z.channels(); ++c) {
        for (int i = 0; i < eh; ++i) {
            const int sy = rows[static_cast<std::size_t>(i)];
            for (int j = 0; j < ew; ++j) {
                const int sx = cols[static_cast<std::size_t>(j)];
                field[static_cast<std::size_t>(i) * ew + j] = z.at(sy, sx, c) - sqrt_ab * prior.mean_at(sy, sx, c);
            }
        }
        detail::solve_stationary(field, eh, ew, ph, pw, prior.sigma * prior.sigma, alpha_bar);
        for (int i = 0; i < out_h; ++i) {
            for (int j = 0; j < out_w; ++j) {
                out.at(i, j, c) = out_gain * field[static_cast<std::size_t>(i + pad) * ew + j + pad];
            }
        }
    }
    return out;
}

Plane eps_correlated(const Plane& z_t, int t, const GaussianPrior& prior, const NoiseSchedule& sched,
                     const Receptive& receptive) {
    return eps_correlated_at(z_t, sched.alpha_bar(t), prior, receptive);
}

Plane eps_toy_parametric(const Plane& z_t, int t, int total_steps, const ToyParams& params) {
    const int b = param_bucket(t, total_steps, params.buckets);
    const double a = params.a(b);
    const double off = params.b(b);
    Plane out = z_t;
    for (auto& v : out.data()) v = a * v + off;
    return out;
}

Plane predict_noise(const DenoiserSpec& spec, const Plane& canvas, const TileRect& rect, int t,
                    const NoiseSchedule& sched, const void* /*conditioning*/) {
    const bool whole = rect.x == 0 && rect.y == 0 && rect.w == canvas.width() && rect.h == canvas.height();
    switch (spec.kind) {
        case DenoiserKind::iid_exact: {
            require_mean_field_shape(spec.prior, canvas);
            if (whole) return eps_iid_exact(canvas, t, spec.prior, sched);
            GaussianPrior local = spec.prior;
            if (local.mean_field) {
                local.mean_field = std::make_shared<const Plane>(local.mean_field->crop(rect.y, rect.x, rect.h, rect.w));
            }
            return eps_iid_exact(canvas.crop(rect.y, rect.x, rect.h, rect.w), t, local, sched);
        }
        case DenoiserKind::correlated_exact: {
            Plane full = eps_correlated(canvas, t, spec.prior, sched, Receptive::whole());
            return whole ? full : full.crop(rect.y, rect.x, rect.h, rect.w);
        }
        case DenoiserKind::correlated_tile_limited:
            return eps_correlated(canvas, t, spec.prior, sched, Receptive::tile(rect, spec.tile_pad));
        case DenoiserKind::toy_parametric: {
            const Plane window = whole ? canvas : canvas.crop(rect.y, rect.x, rect.h, rect.w);
            return eps_toy_parametric(window, t, sched.steps(), spec.params);
        }
    }
    throw ConfigError("unhandled denoiser kind");
}

Plane encode(const Plane& image, int factor) {
    if (factor < 1) throw DimensionError("encode factor must be >= 1");
    Plane latent = downsample_area(image, factor);
    for (auto& v : latent.data()) v = (v - 0.5) * 2.0;
    return latent;
}

Plane decode(const Plane& latent, int factor) {
    if (factor < 1) throw DimensionError("decode factor must be >= 1");
    Plane image = latent;
    for (auto& v : image.data()) v = v / 2.0 + 0.5;
    if (factor > 1) image = resize_bilinear(image, latent.height() * factor, latent.width() * factor);
    clamp_inplace(image, 0.0, 1.0);
    return image;
}

LossGrad loss_arad_with_grad(const std::vector<Plane>& batch, const ToyParams& params,
                             const NoiseSchedule& sched, Rng& rng) {
    if (batch.empty()) throw ConfigError("loss_arad: empty batch");
    for (const auto& item : batch) {
        if (!item.same_shape(batch.front())) throw DimensionError("batching: items in a batch must share one shape");
    }
    if (params.values.size() != 2 * static_cast<std::size_t>(params.buckets)) {
        throw ConfigError("loss_arad: parameter vector does not match bucket count");
    }
    const int total = sched.steps();
    LossGrad out;
    out.grad.assign(params.values.size(), 0.0);
    for (const auto& x0 : batch) {
        const int t = 1 + static_cast<int>(rng.bounded(static_cast<std::uint32_t>(total)));
        const double sqrt_ab = std::sqrt(sched.alpha_bar(t));
        const double sqrt_1m = std::sqrt(1.0 - sched.alpha_bar(t));
        const int b = param_bucket(t, total, params.buckets);
        const double a = params.a(b);
        const double off = params.b(b);
        double sq = 0.0, ga = 0.0, gb = 0.0;
        for (double v : x0.data()) {
            const double eps = rng.normal();
            const double z = sqrt_ab * v + sqrt_1m * eps;
            const double r = eps - (a * z + off);
            sq += r * r;
            ga += r * z;
            gb += r;
        }
        out.loss += sq;
        out.grad[static_cast<std::size_t>(b)] += -2.0 * ga;
        out.grad[static_cast<std::size_t>(params.buckets + b)] += -2.0 * gb;
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    out.loss *= inv;
    for (auto& g : out.grad) g *= inv;
    return out;
}

double loss_arad(const std::vector<Plane>& batch, const ToyParams& params, const NoiseSchedule& sched,
                 Rng& rng) {
    return loss_arad_with_grad(batch, params, sched, rng).loss;
}

TrainResult train_toy_denoiser(const DatasetManifest& manifest, const RatioSizeTable& table,
                               const ImageLoader& loader, const NoiseSchedule& sched, int steps,
                               double lr, Rng& rng, const TrainOptions& options,
                               const ToyParams* initial) {
    if (manifest.empty()) throw ConfigError("train_toy_denoiser: empty manifest");
    if (steps < 0) throw ConfigError("train_toy_denoiser: steps must be >= 0");
    TrainResult result;
    result.params = initial ? *initial : ToyParams::zeros(options.param_buckets);
    if (steps == 0) return result;

    std::unordered_map<std::string, Plane> latents;
    for (const auto& rec : manifest.records()) {
        const auto bucket = nearest_bucket(rec.height, rec.width, table);
        const Plane image = loader(rec);
        latents.emplace(rec.id, encode(resize_to_bucket(image, bucket.height, bucket.width), options.latent_factor));
    }

    std::vector<Batch> batches;
    std::size_t cursor = 0;
    result.loss_trace.reserve(static_cast<std::size_t>(steps));
    for (int step = 0; step < steps; ++step) {
        if (cursor == batches.size()) {
            batches = group_batches(manifest, table, options.batch_size, rng);
            cursor = 0;
        }
        const Batch& batch = batches[cursor++];
        std::vector<Plane> items;
        items.reserve(batch.ids.size());
        for (const auto& id : batch.ids) items.push_back(latents.at(id));

        const LossGrad lg = loss_arad_with_grad(items, result.params, sched, rng);
        if (!std::isfinite(lg.loss)) {
            throw TrainingError("training diverged at step " + std::to_string(step), step);
        }
        result.loss_trace.push_back(lg.loss);
        for (std::size_t i = 0; i < lg.grad.size(); ++i) result.params.values[i] -= lr * lg.grad[i];
    }
    return result;
}

}  // namespace asd
