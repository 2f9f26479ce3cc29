#include "cfomimo/chest.hpp"

#include <cmath>

#include "cfomimo/errors.hpp"

namespace cfomimo {

ChannelRealization estimate_channel(const RxFrame& rx_ul, std::span<const double> omega_hat,
                                    const SystemConfig& config) {
    const int M = config.M, K = config.K, L = config.L;
    if (rx_ul.antennas() != M || rx_ul.length() < K * L || static_cast<int>(omega_hat.size()) != K)
        throw ShapeError("estimate_channel: received pilot segment does not match config");
    const double scale = 1.0 / pilot_amplitude(config);
    ChannelRealization est(M, K, L);
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < L; ++l) {
            const int t = k * L + l;
            const cplx derot = scale * std::polar(1.0, -omega_hat[k] * t);
            for (int m = 0; m < M; ++m) est(m, k, l) = rx_ul(m, t) * derot;
        }
    }
    return est;
}

ChannelRealization effective_channel(const ChannelRealization& h, const CfoState& cfos) {
    ChannelRealization out = h;
    const int L = h.taps();
    for (int k = 0; k < h.users(); ++k) {
        const double d = cfos.delta(k);
        for (int l = 0; l < L; ++l) {
            const cplx rot = std::polar(1.0, -d * (k * L + l));
            for (int m = 0; m < h.antennas(); ++m) out(m, k, l) *= rot;
        }
    }
    return out;
}

}  // namespace cfomimo
