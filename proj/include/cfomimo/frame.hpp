#pragma once

#include <span>
#include <vector>

#include "cfomimo/channel.hpp"
#include "cfomimo/config.hpp"
#include "cfomimo/rng.hpp"

namespace cfomimo {

enum class Slot { cfo_pilot, uplink };

/// Per-user unit-power-normalized transmit streams s_k[t] over one slot; the
/// transmit power sqrt(p_u) is applied by propagate(). Pilot impulses carry
/// amplitude sqrt(KL) here, i.e. sqrt(KL p_u) on air.
class TxFrame {
public:
    TxFrame(Slot slot, int K, int T) : slot_(slot), K_(K), T_(T), s_(std::size_t(K) * T) {}

    Slot slot() const { return slot_; }
    int users() const { return K_; }
    int length() const { return T_; }

    cplx& operator()(int k, int t) { return s_[std::size_t(k) * T_ + t]; }
    const cplx& operator()(int k, int t) const { return s_[std::size_t(k) * T_ + t]; }
    std::span<const cplx> stream(int k) const { return {s_.data() + std::size_t(k) * T_, std::size_t(T_)}; }

private:
    Slot slot_;
    int K_, T_;
    std::vector<cplx> s_;
};

/// Received baseband r_m[t] at every antenna over one slot.
class RxFrame {
public:
    RxFrame(int M, int T) : M_(M), T_(T), r_(std::size_t(M) * T) {}

    int antennas() const { return M_; }
    int length() const { return T_; }

    cplx& operator()(int m, int t) { return r_[std::size_t(m) * T_ + t]; }
    const cplx& operator()(int m, int t) const { return r_[std::size_t(m) * T_ + t]; }
    std::span<const cplx> antenna(int m) const { return {r_.data() + std::size_t(m) * T_, std::size_t(T_)}; }

private:
    int M_, T_;
    std::vector<cplx> r_;
};

/// On-air pilot impulse amplitude sqrt(K L p_u).
double pilot_amplitude(const SystemConfig& config);

/// CFO-estimation slot of N channel uses. In every complete block b, user k
/// sends one impulse at t = b*KL + k*L (0-based k), so its L received taps land
/// on b*KL + k*L + l without overlapping any other user.
TxFrame build_cfo_pilot_frame(const SystemConfig& config);

/// Receive positions b*KL + k*L + l of user k over all complete pilot blocks,
/// ordered by block then tap.
std::vector<int> cfo_pilot_window(const SystemConfig& config, int k);

/// K x N_D i.i.d. CN(0, 1) information symbols, row-major by user.
std::vector<cplx> draw_data_symbols(const SystemConfig& config, RngStream& rng);

/// Uplink slot of N_u uses: pilot impulse at t = k*L, CN(0,1) preamble on
/// [KL, KL+L-2], data on [data_start, data_end], CN(0,1) postamble after.
/// `data` holds K rows of N_D symbols. Throws ShapeError on a size mismatch.
TxFrame build_ul_frame(const SystemConfig& config, std::span<const cplx> data,
                       RngStream& amble_rng);

/// r_m[t] = sqrt(p_u) sum_q e^{j omega_q t} sum_l h_mq[l] s_q[t-l] + w_m[t],
/// w ~ CN(0, sigma2), with s_q[t] = 0 for t < 0.
RxFrame propagate(const TxFrame& tx, const ChannelRealization& h, std::span<const double> omega,
                  const SystemConfig& config, RngStream& noise_rng);

}  // namespace cfomimo
