#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace evgrid {

/// What a substream is used for. The numeric values are part of the
/// reproducibility contract: renumbering changes every result.
enum class StreamPurpose : std::uint32_t {
    GridPartition = 1,
    HouseProfile = 2,
    EvPlacement = 3,
    ApplianceJitter = 4,
    EvTrip = 5,
    EvInitial = 6,
};

/// Deterministic random stream. Backed by std::mt19937_64, whose output
/// sequence is fixed by the standard; every derived quantity (uniforms,
/// Gaussians, indices) is computed here rather than through the
/// implementation-defined std:: distributions.
class RandomStream {
public:
    explicit RandomStream(std::seed_seq& seq) : engine_(seq) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0,1), 53-bit resolution.
    double uniform();

    /// Gaussian by inverse-CDF transform of one uniform. Always consumes
    /// exactly one draw, including when `stddev == 0`.
    double gaussian(double mean, double stddev);

    /// Uniform integer in [0, n). Rejection sampling; n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);

    bool bernoulli(double p) { return uniform() < p; }

    /// Fisher-Yates shuffle driven by uniform_index.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Substream keyed by (master seed, purpose, entity, day). The key words are
/// fed to std::seed_seq in the order
/// {seed_lo, seed_hi, purpose, entity_lo, entity_hi, day_lo, day_hi}.
RandomStream derive_stream(std::uint64_t master_seed, StreamPurpose purpose,
                           std::uint64_t entity_id, std::int64_t day_index);

/// Standard normal quantile.
double normal_quantile(double p);

}  // namespace evgrid
