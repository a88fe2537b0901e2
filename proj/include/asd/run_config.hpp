#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "asd/sampler.hpp"
#include "asd/schedule.hpp"
#include "asd/toy_model.hpp"

namespace asd {

struct ScheduleConfig {
    int steps = kDefaultUpscaleSteps;
    double beta_min = kDefaultBetaMin;
    double beta_max = kDefaultBetaMax;

    NoiseSchedule build() const { return make_linear_schedule(steps, beta_min, beta_max); }
    friend bool operator==(const ScheduleConfig&, const ScheduleConfig&) = default;
};

struct DenoiserConfig {
    DenoiserKind kind = DenoiserKind::correlated_tile_limited;
    double mean = 0.0;
    double sigma = 0.5;
    /// Explicit taps; empty means iid pixels.
    std::vector<double> kernel = gaussian_kernel(6, 2.0);
    BoundaryMode boundary = BoundaryMode::reflect;
    int tile_pad = 0;

    DenoiserSpec build() const;
    friend bool operator==(const DenoiserConfig&, const DenoiserConfig&) = default;
};

enum class BenchTask { latent, sr };

struct BenchConfig {
    BenchTask task = BenchTask::latent;
    int seeds = 1;
    std::uint64_t first_seed = 0;
    /// Latent task canvas.
    int latent_h = 128;
    int latent_w = 128;
    int channels = 4;
    /// SR task.
    int hr_size = 256;
    int scale = 4;
    int latent_factor = 1;
    double strength = 1.0;
    /// Per-row parameters of the strategy matrix.
    int overlap = 32;
    int offset_range = 16;

    friend bool operator==(const BenchConfig&, const BenchConfig&) = default;
};

/// The JSON run document. Keys are snake_case; unknown keys are rejected.
struct RunConfig {
    SampleConfig sample;
    DenoiserConfig denoiser;
    ScheduleConfig schedule;
    BenchConfig bench;
    std::string manifest;
    std::string table;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Missing keys take their defaults. Throws ConfigError naming the bad key.
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig parse_run_config(const std::string& text);
RunConfig read_run_config(const std::string& path);
std::string print_run_config(const RunConfig& cfg);

}  // namespace asd
