#pragma once

#include <vector>

#include "asd/plane.hpp"

namespace asd {

/// Discrete noise schedule with 1-based steps: t = 1 is the cleanest step,
/// t = T the noisiest, and alpha_bar(0) is 1 by definition.
class NoiseSchedule {
public:
    /// Takes ownership of betas[0..T-1] (for t = 1..T). Throws ConfigError
    /// unless every beta lies in (0, 1).
    explicit NoiseSchedule(std::vector<double> betas);

    int steps() const noexcept { return static_cast<int>(betas_.size()); }

    double beta(int t) const { return betas_[checked(t, 1)]; }
    double alpha(int t) const { return alphas_[checked(t, 1)]; }
    double alpha_bar(int t) const { return t == 0 ? 1.0 : alpha_bars_[checked(t, 1)]; }

    const std::vector<double>& betas() const noexcept { return betas_; }
    const std::vector<double>& alphas() const noexcept { return alphas_; }
    const std::vector<double>& alpha_bars() const noexcept { return alpha_bars_; }

private:
    std::size_t checked(int t, int lowest) const;

    std::vector<double> betas_;
    std::vector<double> alphas_;
    std::vector<double> alpha_bars_;
};

inline constexpr double kDefaultBetaMin = 1e-4;
inline constexpr double kDefaultBetaMax = 2e-2;
inline constexpr int kDefaultGenerationSteps = 50;
inline constexpr int kDefaultUpscaleSteps = 200;

/// Betas spaced linearly from beta_min to beta_max inclusive.
NoiseSchedule make_linear_schedule(int steps, double beta_min = kDefaultBetaMin,
                                   double beta_max = kDefaultBetaMax);

/// Descending step indices used when sampling `sample_steps` out of a
/// `train_steps` schedule: t_i = floor(i * train_steps / sample_steps),
/// i = sample_steps .. 1. Equals T, T-1, ..., 1 when the counts agree.
std::vector<int> sampling_timesteps(int train_steps, int sample_steps);

/// sqrt(alpha_bar) * x0 + sqrt(1 - alpha_bar) * eps.
Plane add_noise_at(const Plane& x0, const Plane& eps, double alpha_bar);

/// Forward noising to step t (1 <= t <= T).
Plane add_noise(const Plane& x0, const Plane& eps, int t, const NoiseSchedule& sched);

/// Deterministic (eta = 0) or stochastic DDIM update from t to t_prev.
/// `noise` is required exactly when eta > 0. t_prev = 0 returns the
/// predicted clean sample.
Plane ddim_step(const Plane& z_t, const Plane& eps_hat, int t, int t_prev,
                const NoiseSchedule& sched, double eta = 0.0, const Plane* noise = nullptr);

/// Ancestral DDPM update from t to t - 1 with posterior variance
/// beta_t (1 - alpha_bar_{t-1}) / (1 - alpha_bar_t). No noise is added at t = 1.
Plane ddpm_step(const Plane& z_t, const Plane& eps_hat, int t, const NoiseSchedule& sched,
                const Plane& noise);

/// ddpm_step on explicit coefficients; posterior_var is the variance of the
/// added noise (zero disables it).
Plane ddpm_step_at(const Plane& z_t, const Plane& eps_hat, double beta, double alpha_bar,
                   double posterior_var, const Plane& noise);

}  // namespace asd
