#pragma once

#include <span>
#include <vector>

#include "cfomimo/channel.hpp"
#include "cfomimo/config.hpp"
#include "cfomimo/frame.hpp"

namespace cfomimo {

/// TR-MRC output for user k at channel use t:
///   x_hat_k[t] = sum_m sum_l conj(h_hat_mk[l]) r_m[t+l] e^{-j omega_hat_k (t+l)}.
/// Requires t + L - 1 < rx.length().
cplx detect(const RxFrame& rx, const ChannelRealization& h_hat, std::span<const double> omega_hat,
            int k, int t);

/// detect() for every t in [data_start, data_end].
std::vector<cplx> detect_user(const RxFrame& rx, const ChannelRealization& h_hat,
                              std::span<const double> omega_hat, const SystemConfig& config, int k);

/// Deterministic mean of the effective gain A_k[t]:
///   sqrt(p_u) M theta_k exp(-sigma2_omega (t - kL)^2 / 2).
double mean_gain(const SystemConfig& config, int k, int t, double sigma2_omega);

enum class Component { es = 0, sif, isi, mui, en };
inline constexpr int kComponentCount = 5;
const char* component_name(Component c);

struct RxDecomposition {
    cplx es, sif, isi, mui, en, x_hat;

    cplx interference() const { return sif + isi + mui + en; }
    cplx operator[](Component c) const;
};

/// Splits detector outputs into effective signal, self-interference, ISI, MUI
/// and effective noise using the simulator's ground truth. The Gram matrices
/// of the effective channel are formed once, so many (k, t) cells per trial
/// are cheap.
class Decomposer {
public:
    Decomposer(const RxFrame& rx, const TxFrame& tx, const ChannelRealization& h,
               const ChannelRealization& h_hat, const CfoState& cfos,
               const SystemConfig& config, std::vector<double> sigma2_omega);

    RxDecomposition operator()(int k, int t) const;

private:
    cplx gram(int k, int l, int q, int lp) const {
        return gram_[((std::size_t(k) * L_ + l) * K_ + q) * L_ + lp];
    }

    const RxFrame& rx_;
    const TxFrame& tx_;
    const ChannelRealization& h_hat_;
    const CfoState& cfos_;
    const SystemConfig& config_;
    std::vector<double> sigma2_omega_;
    int K_, L_;
    // sum_m conj(h~_mk[l]) h~_mq[l'] for every (k, l, q, l').
    std::vector<cplx> gram_;
};

/// One-shot form of Decomposer for a single cell.
RxDecomposition decompose(const RxFrame& rx, const ChannelRealization& h,
                          const ChannelRealization& h_hat, const CfoState& cfos, const TxFrame& tx,
                          const SystemConfig& config, std::span<const double> sigma2_omega, int k,
                          int t);

}  // namespace cfomimo
