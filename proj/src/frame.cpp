#include "cfomimo/frame.hpp"

#include <cmath>
#include <string>

#include "cfomimo/errors.hpp"

namespace cfomimo {

double pilot_amplitude(const SystemConfig& config) {
    return std::sqrt(double(config.K) * config.L * config.p_u);
}

TxFrame build_cfo_pilot_frame(const SystemConfig& config) {
    const DerivedFrame f = validate(config);
    const int KL = config.K * config.L;
    TxFrame tx(Slot::cfo_pilot, config.K, config.N);
    const double a = std::sqrt(double(KL));
    for (int b = 0; b < f.full_blocks; ++b)
        for (int k = 0; k < config.K; ++k) tx(k, b * KL + k * config.L) = a;
    return tx;
}

std::vector<int> cfo_pilot_window(const SystemConfig& config, int k) {
    const DerivedFrame f = validate(config);
    const int KL = config.K * config.L;
    std::vector<int> pos;
    pos.reserve(std::size_t(f.full_blocks) * config.L);
    for (int b = 0; b < f.full_blocks; ++b)
        for (int l = 0; l < config.L; ++l) pos.push_back(b * KL + k * config.L + l);
    return pos;
}

std::vector<cplx> draw_data_symbols(const SystemConfig& config, RngStream& rng) {
    const DerivedFrame f = validate(config);
    std::vector<cplx> d(std::size_t(config.K) * f.N_D);
    for (auto& x : d) x = rng.complex_normal(1.0);
    return d;
}

TxFrame build_ul_frame(const SystemConfig& config, std::span<const cplx> data,
                       RngStream& amble_rng) {
    const DerivedFrame f = validate(config);
    const int K = config.K, L = config.L, KL = K * L;
    if (data.size() != std::size_t(K) * f.N_D)
        throw ShapeError("data has " + std::to_string(data.size()) + " symbols, expected K*N_D=" +
                         std::to_string(std::size_t(K) * f.N_D));

    TxFrame tx(Slot::uplink, K, config.N_u);
    const double a = std::sqrt(double(KL));
    for (int k = 0; k < K; ++k) {
        tx(k, k * L) = a;
        for (int t = KL; t < f.data_start; ++t) tx(k, t) = amble_rng.complex_normal(1.0);
        for (int i = 0; i < f.N_D; ++i) tx(k, f.data_start + i) = data[std::size_t(k) * f.N_D + i];
        for (int t = f.data_end + 1; t < config.N_u; ++t) tx(k, t) = amble_rng.complex_normal(1.0);
    }
    return tx;
}

RxFrame propagate(const TxFrame& tx, const ChannelRealization& h, std::span<const double> omega,
                  const SystemConfig& config, RngStream& noise_rng) {
    const int M = h.antennas(), K = h.users(), L = h.taps(), T = tx.length();
    if (tx.users() != K || static_cast<int>(omega.size()) != K)
        throw ShapeError("propagate: user count mismatch between frame, channel and CFOs");

    RxFrame rx(M, T);
    const double amp = std::sqrt(config.p_u);
    std::vector<cplx> rot(T);
    std::vector<cplx> conv(T);
    for (int q = 0; q < K; ++q) {
        for (int t = 0; t < T; ++t) rot[t] = amp * std::polar(1.0, omega[q] * t);
        const auto s = tx.stream(q);
        for (int m = 0; m < M; ++m) {
            std::fill(conv.begin(), conv.end(), cplx{});
            for (int l = 0; l < L; ++l) {
                const cplx g = h(m, q, l);
                for (int t = l; t < T; ++t) conv[t] += g * s[t - l];
            }
            for (int t = 0; t < T; ++t) rx(m, t) += rot[t] * conv[t];
        }
    }
    if (config.sigma2 > 0.0) {
        for (int m = 0; m < M; ++m)
            for (int t = 0; t < T; ++t) rx(m, t) += noise_rng.complex_normal(config.sigma2);
    }
    return rx;
}

}  // namespace cfomimo
