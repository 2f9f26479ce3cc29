#pragma once

#include "cfomimo/channel.hpp"
#include "cfomimo/config.hpp"
#include "cfomimo/frame.hpp"
#include "cfomimo/rng.hpp"

namespace cfomimo {

enum class CfoEstimatorMode { full, analytic };

struct CfoEstimatorOutput {
    std::vector<double> omega_hat;
    CfoEstimatorMode mode = CfoEstimatorMode::full;
};

/// MSE of the block-correlation CFO estimate for one user:
///
///   (1/gamma) (G/(B-1) + 1/(2 K gamma)) / (M (N - KL) (KL)^2 G^2),  B = ceil(N/KL).
///
/// gamma may be +inf (noiseless), giving 0. Throws DomainError if N <= KL or
/// B < 2.
double mse_cfo(double gamma, int M, int N, int K, int L, double G = 1.0);

/// mse_cfo for user k with G = 1 and gamma = config.gamma(k).
double mse_cfo(const SystemConfig& config, int k);

/// Correlates each user's received pilot taps of block b+1 with those of block
/// b, sums over antennas, taps and blocks, and returns arg(sum) / (KL).
/// Throws DegenerateError when the sum is exactly zero.
CfoEstimatorOutput estimate_cfo_full(const RxFrame& rx, const SystemConfig& config);

/// omega_hat_k = omega_k + N(0, mse_cfo(config, k)), independent across users.
CfoEstimatorOutput draw_residual_cfo(std::span<const double> omega, const SystemConfig& config,
                                     RngStream& rng);

}  // namespace cfomimo
