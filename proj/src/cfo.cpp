#include "cfomimo/cfo.hpp"

#include <cmath>

#include "cfomimo/errors.hpp"

namespace cfomimo {

double mse_cfo(double gamma, int M, int N, int K, int L, double G) {
    const int KL = K * L;
    if (N <= KL) throw DomainError("mse_cfo: N must exceed KL");
    const int B = (N + KL - 1) / KL;
    if (B < 2) throw DomainError("mse_cfo: needs at least two pilot blocks");
    if (!(gamma > 0.0) || !(G > 0.0)) throw DomainError("mse_cfo: gamma and G must be positive");
    const double inv_g = 1.0 / gamma;
    const double num = inv_g * (G / (B - 1) + inv_g / (2.0 * K));
    const double den = double(M) * (N - KL) * double(KL) * KL * G * G;
    return num / den;
}

double mse_cfo(const SystemConfig& config, int k) {
    return mse_cfo(config.gamma(k), config.M, config.N, config.K, config.L, 1.0);
}

CfoEstimatorOutput estimate_cfo_full(const RxFrame& rx, const SystemConfig& config) {
    const DerivedFrame f = validate(config);
    const int K = config.K, L = config.L, KL = K * L;
    if (rx.length() < f.full_blocks * KL) throw ShapeError("CFO pilot slot shorter than N");

    CfoEstimatorOutput out;
    out.mode = CfoEstimatorMode::full;
    out.omega_hat.resize(K);
    for (int k = 0; k < K; ++k) {
        cplx acc{};
        for (int m = 0; m < rx.antennas(); ++m) {
            const auto r = rx.antenna(m);
            for (int b = 0; b + 1 < f.full_blocks; ++b) {
                const int t0 = b * KL + k * L;
                for (int l = 0; l < L; ++l) acc += r[t0 + KL + l] * std::conj(r[t0 + l]);
            }
        }
        if (acc == cplx{}) throw DegenerateError("CFO correlation sum is zero");
        out.omega_hat[k] = std::arg(acc) / KL;
    }
    return out;
}

CfoEstimatorOutput draw_residual_cfo(std::span<const double> omega, const SystemConfig& config,
                                     RngStream& rng) {
    CfoEstimatorOutput out;
    out.mode = CfoEstimatorMode::analytic;
    out.omega_hat.resize(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) {
        const double var = mse_cfo(config, static_cast<int>(k));
        out.omega_hat[k] = omega[k] + std::sqrt(var) * rng.normal();
    }
    return out;
}

}  // namespace cfomimo
