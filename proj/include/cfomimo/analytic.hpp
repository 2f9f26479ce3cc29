#pragma once

#include <vector>

#include "cfomimo/config.hpp"
#include "cfomimo/trmrc.hpp"

namespace cfomimo {

/// Closed-form variances of the five detector-output components for user k at
/// channel use t (0-based k, tau = t - kL).
struct ComponentVariances {
    double es = 0, sif = 0, isi = 0, mui = 0, en = 0;

    double interference() const { return sif + isi + mui + en; }
    double operator[](Component c) const;
};

ComponentVariances component_variances(int k, int t, const SystemConfig& config,
                                       double sigma2_omega);

/// SINR_k[t] = e^{-s tau^2} / ([1 - e^{-s tau^2}] + 1/(M K g^2) + c1/(M g) + c2/M)
/// with s = sigma2_omega, g = gamma and tau = t - kL.
double sinr(int k, int t, int L, double gamma, double sigma2_omega, int M, int K, double c1,
            double c2);

enum class RateMode { residual, zero_cfo };

struct SinrProfile {
    int k = 0;
    int t_first = 0;           // data_start; sinr[i] belongs to t_first + i
    double gamma = 0;          // received SNR used, linear
    double sigma2_omega = 0;   // CFO MSE used (0 in zero_cfo mode)
    std::vector<double> sinr;
    double rate = 0;           // bpcu, (1/N_u) sum_t log2(1 + sinr)
};

/// Rate profile at the config's own gamma_k. Residual mode takes the CFO MSE
/// from mse_cfo with G = 1.
SinrProfile rate(int k, const SystemConfig& config, RateMode mode);

/// Same, at an explicit received SNR (linear) for user k.
SinrProfile rate_at_gamma(int k, const SystemConfig& config, double gamma, RateMode mode);

/// Bisection over gamma in dB on [lo_db, hi_db], preceded by a monotonicity scan.
struct SnrSearch {
    double lo_db = -60.0;
    double hi_db = 60.0;
    double resolution_db = 1e-3;
    int prescan_points = 20;
};

/// Smallest gamma_k (dB) with frame rate >= target. Returns lo_db when even
/// the bracket floor meets the target; throws UnachievableError when hi_db
/// does not.
double min_snr_for_rate(int k, double target_bpcu, const SystemConfig& config, RateMode mode,
                        const SnrSearch& search = {});

/// Smallest gamma_k (dB) with log2(1 + SINR_k[t]) >= target for one channel use.
double min_snr_for_use_rate(int k, int t, double target_bpcu, const SystemConfig& config,
                            RateMode mode, const SnrSearch& search = {});

/// alpha_{k,t} = (t - kL)^2 / (2 (N - KL) (KL)^2). Throws DomainError if N <= KL.
double alpha(int k, int t, int N, int K, int L);

/// 10 log10 sqrt(1 + alpha).
double asymptotic_gap_db(double alpha);

/// Root theta' of (1 + theta)(1 - 2^{-R}) = exp(-alpha theta), the large-M
/// normalized noise level 1/(M K gamma^2) that still supports rate R.
double theta_prime(double alpha, double rate_bpcu);

/// 10 log10 sqrt(theta_0 / theta') with theta_0 = 1/(2^R - 1): the large-M
/// gap without the small-alpha approximation.
double exact_asymptotic_gap_db(double alpha, double rate_bpcu);

/// 1 / (M K gamma^2).
double theta_limit(int M, int K, double gamma);

struct GapReport {
    double gamma_required_db = 0;   // residual CFO
    double gamma0_required_db = 0;  // zero CFO
    double gap_db = 0;
    int t_alpha = 0;                // channel use at which alpha_kt is reported (data_end)
    double alpha_kt = 0;
    double theta_limit = 0;         // 1/(M K gamma^2) at gamma_required
};

GapReport snr_gap_db(int k, double target_bpcu, const SystemConfig& config,
                     const SnrSearch& search = {});

}  // namespace cfomimo
