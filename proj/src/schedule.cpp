#include "asd/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asd {

NoiseSchedule::NoiseSchedule(std::vector<double> betas) : betas_(std::move(betas)) {
    if (betas_.empty()) throw ConfigError("noise schedule needs at least one step");
    alphas_.resize(betas_.size());
    alpha_bars_.resize(betas_.size());
    double running = 1.0;
    for (std::size_t i = 0; i < betas_.size(); ++i) {
        const double b = betas_[i];
        if (!(b > 0.0 && b < 1.0)) {
            throw ConfigError("beta at step " + std::to_string(i + 1) + " outside (0, 1)");
        }
        alphas_[i] = 1.0 - b;
        running *= alphas_[i];
        alpha_bars_[i] = running;
    }
}

std::size_t NoiseSchedule::checked(int t, int lowest) const {
    if (t < lowest || t > steps()) {
        throw OrderingError("step index " + std::to_string(t) + " outside [" +
                            std::to_string(lowest) + ", " + std::to_string(steps()) + "]");
    }
    return static_cast<std::size_t>(t - 1);
}

NoiseSchedule make_linear_schedule(int steps, double beta_min, double beta_max) {
    if (steps < 1) throw ConfigError("schedule step count must be >= 1");
    if (!(beta_min > 0.0 && beta_min <= beta_max && beta_max < 1.0)) {
        throw ConfigError("linear schedule requires 0 < beta_min <= beta_max < 1");
    }
    std::vector<double> betas(static_cast<std::size_t>(steps));
    if (steps == 1) {
        betas[0] = beta_min;
    } else {
        for (int i = 0; i < steps; ++i) {
            betas[static_cast<std::size_t>(i)] =
                beta_min + (beta_max - beta_min) * static_cast<double>(i) / (steps - 1);
        }
        betas.back() = beta_max;
    }
    return NoiseSchedule(std::move(betas));
}

std::vector<int> sampling_timesteps(int train_steps, int sample_steps) {
    if (sample_steps < 1 || sample_steps > train_steps) {
        throw ConfigError("sample step count must lie in [1, " + std::to_string(train_steps) + "]");
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(sample_steps));
    for (int i = sample_steps; i >= 1; --i) {
        out.push_back(static_cast<int>(static_cast<long long>(i) * train_steps / sample_steps));
    }
    return out;
}

Plane add_noise_at(const Plane& x0, const Plane& eps, double alpha_bar) {
    x0.require_same_shape(eps, "add_noise");
    const double a = std::sqrt(alpha_bar);
    const double b = std::sqrt(1.0 - alpha_bar);
    Plane out = x0;
    auto o = out.data();
    auto e = eps.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = a * o[i] + b * e[i];
    return out;
}

Plane add_noise(const Plane& x0, const Plane& eps, int t, const NoiseSchedule& sched) {
    if (t < 1 || t > sched.steps()) throw OrderingError("add_noise: step outside [1, T]");
    return add_noise_at(x0, eps, sched.alpha_bar(t));
}

Plane ddim_step(const Plane& z_t, const Plane& eps_hat, int t, int t_prev,
                const NoiseSchedule& sched, double eta, const Plane* noise) {
    if (t_prev >= t) throw OrderingError("ddim_step: t_prev must be smaller than t");
    if (t_prev < 0) throw OrderingError("ddim_step: t_prev must be >= 0");
    if (eta < 0.0) throw ConfigError("ddim_step: eta must be >= 0");
    if (eta > 0.0 && noise == nullptr) throw ConfigError("ddim_step: eta > 0 requires noise");
    z_t.require_same_shape(eps_hat, "ddim_step");
    if (noise) z_t.require_same_shape(*noise, "ddim_step noise");

    const double ab_t = sched.alpha_bar(t);
    const double ab_prev = sched.alpha_bar(t_prev);
    const double sqrt_ab_t = std::sqrt(ab_t);
    const double sqrt_1m_ab_t = std::sqrt(1.0 - ab_t);
    const double sigma =
        eta * std::sqrt((1.0 - ab_prev) / (1.0 - ab_t)) * std::sqrt(1.0 - ab_t / ab_prev);
    const double dir = std::sqrt(std::max(0.0, 1.0 - ab_prev - sigma * sigma));
    const double sqrt_ab_prev = std::sqrt(ab_prev);

    Plane out = z_t;
    auto o = out.data();
    auto e = eps_hat.data();
    for (std::size_t i = 0; i < o.size(); ++i) {
        const double x0 = (o[i] - sqrt_1m_ab_t * e[i]) / sqrt_ab_t;
        if (t_prev == 0) {
            o[i] = x0;
        } else {
            o[i] = sqrt_ab_prev * x0 + dir * e[i];
        }
    }
    if (sigma > 0.0) {
        auto n = noise->data();
        for (std::size_t i = 0; i < o.size(); ++i) o[i] += sigma * n[i];
    }
    return out;
}

Plane ddpm_step(const Plane& z_t, const Plane& eps_hat, int t, const NoiseSchedule& sched,
                const Plane& noise) {
    if (t < 1 || t > sched.steps()) throw OrderingError("ddpm_step: step outside [1, T]");
    const double beta = sched.beta(t);
    const double ab_t = sched.alpha_bar(t);
    const double ab_prev = sched.alpha_bar(t - 1);
    const double posterior_var = t == 1 ? 0.0 : beta * (1.0 - ab_prev) / (1.0 - ab_t);
    return ddpm_step_at(z_t, eps_hat, beta, ab_t, posterior_var, noise);
}

Plane ddpm_step_at(const Plane& z_t, const Plane& eps_hat, double beta, double alpha_bar,
                   double posterior_var, const Plane& noise) {
    z_t.require_same_shape(eps_hat, "ddpm_step");
    z_t.require_same_shape(noise, "ddpm_step noise");

    const double inv_sqrt_alpha = 1.0 / std::sqrt(1.0 - beta);
    const double eps_coef = beta == 0.0 ? 0.0 : beta / std::sqrt(1.0 - alpha_bar);
    const double noise_scale = std::sqrt(posterior_var);

    Plane out = z_t;
    auto o = out.data();
    auto e = eps_hat.data();
    auto n = noise.data();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] = inv_sqrt_alpha * (o[i] - eps_coef * e[i]);
        if (noise_scale > 0.0) o[i] += noise_scale * n[i];
    }
    return out;
}

}  // namespace asd
