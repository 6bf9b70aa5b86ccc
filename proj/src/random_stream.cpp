#include "evgrid/random_stream.hpp"

#include <boost/math/distributions/normal.hpp>

#include <limits>
#include <stdexcept>

namespace evgrid {

double RandomStream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double normal_quantile(double p) {
    static const boost::math::normal_distribution<double> standard{0.0, 1.0};
    return boost::math::quantile(standard, p);
}

double RandomStream::gaussian(double mean, double stddev) {
    const double z = normal_quantile(uniform());
    return stddev == 0.0 ? mean : mean + stddev * z;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
}

int RandomStream::uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    return lo + static_cast<int>(uniform_index(span));
}

RandomStream derive_stream(std::uint64_t master_seed, StreamPurpose purpose,
                           std::uint64_t entity_id, std::int64_t day_index) {
    const auto day = static_cast<std::uint64_t>(day_index);
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(purpose),
                      static_cast<std::uint32_t>(entity_id),
                      static_cast<std::uint32_t>(entity_id >> 32),
                      static_cast<std::uint32_t>(day),
                      static_cast<std::uint32_t>(day >> 32)};
    return RandomStream(seq);
}

}  // namespace evgrid
