#include "spectral.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include <fftw3.h>

namespace asd::detail {

namespace {

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_alloc(std::size_t n) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

// Planner calls are not thread-safe in FFTW; executing an existing plan on
// new arrays is. Plans live for the process lifetime.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    PlanPair get(int h, int w) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find({h, w});
        if (it != plans_.end()) return it->second;
        const std::size_t real_n = static_cast<std::size_t>(h) * w;
        const std::size_t complex_n = static_cast<std::size_t>(h) * (w / 2 + 1);
        auto real = fftw_alloc<double>(real_n);
        auto spec = fftw_alloc<fftw_complex>(complex_n);
        PlanPair pair;
        pair.forward = fftw_plan_dft_r2c_2d(h, w, real.get(), spec.get(), FFTW_ESTIMATE);
        pair.inverse = fftw_plan_dft_c2r_2d(h, w, spec.get(), real.get(), FFTW_ESTIMATE);
        plans_.emplace(std::pair{h, w}, pair);
        return pair;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, PlanPair> plans_;
};

}  // namespace

namespace {

std::vector<double> power_spectrum_uncached(std::span<const double> kernel, int n) {
    std::vector<double> wrapped(static_cast<std::size_t>(n), 0.0);
    const int radius = static_cast<int>(kernel.size()) / 2;
    for (int j = 0; j < static_cast<int>(kernel.size()); ++j) {
        const int pos = ((j - radius) % n + n) % n;
        wrapped[static_cast<std::size_t>(pos)] += kernel[static_cast<std::size_t>(j)];
    }
    std::vector<double> power(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        double re = 0.0;
        double im = 0.0;
        for (int j = 0; j < n; ++j) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(u) * j / n;
            re += wrapped[static_cast<std::size_t>(j)] * std::cos(angle);
            im += wrapped[static_cast<std::size_t>(j)] * std::sin(angle);
        }
        power[static_cast<std::size_t>(u)] = re * re + im * im;
    }
    return power;
}

}  // namespace

std::vector<double> kernel_power_spectrum(std::span<const double> kernel, int n) {
    static std::mutex mutex;
    static std::map<std::pair<std::vector<double>, int>, std::vector<double>> cache;
    std::pair key{std::vector<double>(kernel.begin(), kernel.end()), n};
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto power = power_spectrum_uncached(kernel, n);
    std::lock_guard lock(mutex);
    return cache.emplace(std::move(key), std::move(power)).first->second;
}

void solve_stationary(std::span<double> field, int h, int w, std::span<const double> ph,
                      std::span<const double> pw, double scale, double alpha_bar) {
    const PlanPair plans = PlanCache::instance().get(h, w);
    const std::size_t real_n = static_cast<std::size_t>(h) * w;
    const int wc = w / 2 + 1;
    auto real = fftw_alloc<double>(real_n);
    auto spec = fftw_alloc<fftw_complex>(static_cast<std::size_t>(h) * wc);

    std::copy(field.begin(), field.end(), real.get());
    fftw_execute_dft_r2c(plans.forward, real.get(), spec.get());
    const double inv_n = 1.0 / static_cast<double>(real_n);
    for (int u = 0; u < h; ++u) {
        for (int v = 0; v < wc; ++v) {
            const double lambda = scale * ph[static_cast<std::size_t>(u)] * pw[static_cast<std::size_t>(v)];
            const double gain = inv_n / (alpha_bar * lambda + (1.0 - alpha_bar));
            auto& c = spec[static_cast<std::size_t>(u) * wc + v];
            c[0] *= gain;
            c[1] *= gain;
        }
    }
    fftw_execute_dft_c2r(plans.inverse, spec.get(), real.get());
    std::copy(real.get(), real.get() + real_n, field.begin());
}

}  // namespace asd::detail
