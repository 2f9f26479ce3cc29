#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace cfomimo {

using cplx = std::complex<double>;

/// Purpose tags so the channel, CFO and noise draws of one trial never share
/// a substream.
enum class StreamPurpose : std::uint64_t {
    channel = 1,
    cfo = 2,
    residual_cfo = 3,
    pilot_noise = 4,
    data = 5,
    ul_noise = 6,
    user = 100,
};

/// One random stream, keyed by (seed, trial, purpose). The key is hashed with
/// splitmix64 into the state of a 64-bit Mersenne Twister, so trial T draws the
/// same numbers no matter which worker runs it or in which order.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t trial, StreamPurpose purpose);
    explicit RngStream(std::uint64_t seed) : RngStream(seed, 0, StreamPurpose::user) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }
    /// Circular-symmetric complex Gaussian with E|z|^2 = variance.
    cplx complex_normal(double variance);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cfomimo
