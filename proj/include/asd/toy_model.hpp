#pragma once

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "asd/plane.hpp"
#include "asd/ratio_bucket.hpp"
#include "asd/rng.hpp"
#include "asd/schedule.hpp"
#include "asd/tiling.hpp"

namespace asd {

/// How tile context is fetched beyond the canvas edge.
enum class BoundaryMode { circular, reflect };

/// Gaussian data distribution x0 ~ N(mu, sigma^2 K K^T) per channel, where K
/// is circular convolution with the separable `kernel` (identity when empty).
struct GaussianPrior {
    double mean = 0.0;
    /// Per-pixel mean; overrides `mean` when set. Must match the canvas shape.
    std::shared_ptr<const Plane> mean_field;
    double sigma = 1.0;
    /// Odd-length, nonnegative taps summing to 1. Empty means iid pixels.
    std::vector<double> kernel;
    BoundaryMode boundary = BoundaryMode::reflect;

    /// Throws ConfigError on sigma <= 0 or a malformed kernel.
    void validate() const;
    bool correlated() const noexcept { return !kernel.empty(); }
    double mean_at(int y, int x, int c) const noexcept {
        return mean_field ? mean_field->at(y, x, c) : mean;
    }
};

/// Normalised sampled Gaussian of length 2 * radius + 1.
std::vector<double> gaussian_kernel(int radius, double width);

/// Per-step affine noise predictor eps = a_b * z + b_b, with b the step
/// bucket floor((t - 1) * buckets / T). `values` holds all a's then all b's.
struct ToyParams {
    int buckets = 1;
    std::vector<double> values;

    static ToyParams zeros(int buckets) { return {buckets, std::vector<double>(2 * static_cast<std::size_t>(buckets), 0.0)}; }
    double a(int bucket) const { return values.at(static_cast<std::size_t>(bucket)); }
    double b(int bucket) const { return values.at(static_cast<std::size_t>(buckets + bucket)); }
};

int param_bucket(int t, int total_steps, int buckets);

enum class DenoiserKind { iid_exact, correlated_exact, correlated_tile_limited, toy_parametric };

DenoiserKind parse_denoiser_kind(std::string_view name);
std::string_view to_string(DenoiserKind kind);

/// Stand-in for the learned noise predictor.
struct DenoiserSpec {
    DenoiserKind kind = DenoiserKind::iid_exact;
    GaussianPrior prior;
    int tile_pad = 0;
    ToyParams params;

    void validate() const;
};

/// Exact posterior-mean noise prediction for an iid prior at a given
/// alpha_bar: sqrt(1 - ab) (z - sqrt(ab) mu) / (ab sigma^2 + 1 - ab).
/// Throws ConfigError when alpha_bar >= 1.
Plane eps_iid_exact_at(const Plane& z, double alpha_bar, const GaussianPrior& prior);
Plane eps_iid_exact(const Plane& z_t, int t, const GaussianPrior& prior, const NoiseSchedule& sched);

/// Field of view of the correlated denoiser.
struct Receptive {
    bool full = true;
    TileRect rect;
    int pad = 0;

    static Receptive whole() { return {}; }
    static Receptive tile(TileRect rect, int pad) { return {false, rect, pad}; }
};

/// Gaussian posterior-mean noise prediction for a correlated prior,
/// eps = sqrt(1 - ab) (ab Sigma + (1 - ab) I)^{-1} (z - sqrt(ab) mu), applied as
/// a stationary filter under circular boundary. With a tile receptive field
/// the filter only sees the tile grown by `pad` pixels (context outside the
/// canvas per prior.boundary) and the result is cropped to the tile.
/// Output shape: the canvas for `whole`, the tile rect otherwise.
Plane eps_correlated(const Plane& z_t, int t, const GaussianPrior& prior, const NoiseSchedule& sched,
                     const Receptive& receptive);
Plane eps_correlated_at(const Plane& z, double alpha_bar, const GaussianPrior& prior,
                        const Receptive& receptive);

/// eps = a_b z + b_b elementwise.
Plane eps_toy_parametric(const Plane& z_t, int t, int total_steps, const ToyParams& params);

/// Noise prediction for the `rect` window of `canvas` at step t. The result
/// has the rect's shape. `conditioning` is accepted and ignored.
Plane predict_noise(const DenoiserSpec& spec, const Plane& canvas, const TileRect& rect, int t,
                    const NoiseSchedule& sched, const void* conditioning = nullptr);

/// Toy encoder: factor x factor area mean, then v -> 2 (v - 0.5).
Plane encode(const Plane& image, int factor);

/// Toy decoder: v -> v / 2 + 0.5, bilinear upsample by factor, clamp to [0, 1].
Plane decode(const Plane& latent, int factor);

struct LossGrad {
    double loss = 0.0;
    std::vector<double> grad;
};

/// Denoising objective over a homogeneous batch of clean latents: per item
/// draw t ~ U{1..T} and eps ~ N(0, I) from rng, predict with the
/// parametric model, and average ||eps - eps_hat||^2 over items.
double loss_arad(const std::vector<Plane>& batch, const ToyParams& params, const NoiseSchedule& sched,
                 Rng& rng);

/// Same loss with its analytic gradient with respect to params.values.
LossGrad loss_arad_with_grad(const std::vector<Plane>& batch, const ToyParams& params,
                             const NoiseSchedule& sched, Rng& rng);

using ImageLoader = std::function<Plane(const ManifestRecord&)>;

struct TrainOptions {
    int batch_size = 4;
    int latent_factor = 8;
    int param_buckets = 10;
};

struct TrainResult {
    ToyParams params;
    std::vector<double> loss_trace;
};

/// Plain gradient descent on loss_arad over bucket-homogeneous batches.
/// Images are loaded once, resized to their bucket and encoded. Batches are
/// regrouped with a fresh shuffle every time the list is exhausted.
/// Throws TrainingError carrying the step index when the loss is not finite.
TrainResult train_toy_denoiser(const DatasetManifest& manifest, const RatioSizeTable& table,
                               const ImageLoader& loader, const NoiseSchedule& sched, int steps,
                               double lr, Rng& rng, const TrainOptions& options = {},
                               const ToyParams* initial = nullptr);

}  // namespace asd
