#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace asd {

/// What a random stream is used for. Mixed into the stream id so that, for
/// one run seed, initial noise, per-step noise and per-step offsets never
/// share a sequence.
enum class StreamPurpose : std::uint64_t {
    initial_latent = 1,
    step_noise = 2,
    tile_offset = 3,
    shuffle = 4,
    training = 5,
    fixture = 6,
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream id for (seed, purpose, index). Pure function of its inputs.
std::uint64_t derive_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index) noexcept;

/// PCG-XSH-RR: 64-bit LCG state, 32-bit output, selectable stream.
///
/// Sequences depend only on (seed, stream) and are identical on every
/// platform. Normals use the Box-Muller transform on 53-bit uniforms and
/// are produced in pairs; the second value of a pair is cached.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    /// Convenience: Rng(seed, derive_stream(seed, purpose, index)).
    static Rng for_purpose(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index = 0) noexcept {
        return Rng(seed, derive_stream(seed, purpose, index));
    }

    std::uint32_t next_u32() noexcept;

    /// Uniform in (0, 1), never exactly 0 or 1.
    double uniform() noexcept;

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint32_t bounded(std::uint32_t bound) noexcept;

    double normal() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::optional<double> spare_;
};

/// `count` standard normal samples drawn from `rng`.
std::vector<double> normal_sample(Rng& rng, std::size_t count);

}  // namespace asd
