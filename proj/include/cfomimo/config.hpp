#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

namespace cfomimo {

/// Per-user tap variances sigma^2_{h,k,l}; K rows of L entries.
class PowerDelayProfile {
public:
    PowerDelayProfile() = default;
    explicit PowerDelayProfile(std::vector<std::vector<double>> rows);

    int users() const { return static_cast<int>(rows_.size()); }
    int taps() const { return rows_.empty() ? 0 : static_cast<int>(rows_.front().size()); }

    double operator()(int k, int l) const { return rows_[k][l]; }
    const std::vector<double>& row(int k) const { return rows_[k]; }

    /// Total received power of user k, sum over taps.
    double theta(int k) const;
    /// Sum over taps of sigma^4.
    double sum_sq(int k) const;
    double theta_total() const;

private:
    std::vector<std::vector<double>> rows_;
};

/// Every user gets sigma^2_{h,k,l} = 1/L, so theta_k = 1.
PowerDelayProfile uniform_pdp(int K, int L);

struct SystemConfig {
    int M = 160;
    int K = 10;
    int L = 10;
    int N = 2000;    // CFO pilot length
    int N_u = 2000;  // uplink slot length
    double p_u = 1.0;
    double sigma2 = 1.0;
    double kappa_ppm = 0.1;
    double f_c_hz = 2e9;
    double bw_hz = 1e6;
    bool allow_large_cfo = false;
    PowerDelayProfile pdp = uniform_pdp(10, 10);

    /// Largest CFO magnitude in radians per channel use, 2*pi*kappa*f_c/B_w.
    double omega_max() const {
        return 2.0 * std::numbers::pi * kappa_ppm * 1e-6 * f_c_hz / bw_hz;
    }

    /// Received SNR gamma_k = (p_u / sigma^2) * theta_k. Infinite when sigma2 == 0.
    double gamma(int k) const;
};

/// Slot timeline derived from a validated config. Times are 0-based channel uses.
struct DerivedFrame {
    int B = 0;            // ceil(N / KL), as used by the MSE expression
    int full_blocks = 0;  // floor(N / KL), blocks used by the estimator
    int data_start = 0;   // KL + L - 1
    int data_end = 0;     // N_u - L
    int N_D = 0;          // N_u - KL - 2(L - 1)
};

/// Checks every invariant of the configuration and returns the timeline.
/// Throws DimensionError, TimelineError or CfoBoundError.
DerivedFrame validate(const SystemConfig& config);

/// Copy of `config` with a uniform PDP resized to its K and L.
SystemConfig with_uniform_pdp(SystemConfig config);

/// Constants of the SINR expression: c1 = 1 + sum_q theta_q / (K theta_k),
/// c2 = sum_q theta_q / theta_k.
struct SinrConstants {
    double c1 = 0.0;
    double c2 = 0.0;
};
SinrConstants sinr_constants(const PowerDelayProfile& pdp, int k);

}  // namespace cfomimo
