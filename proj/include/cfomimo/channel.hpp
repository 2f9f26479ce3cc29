#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cfomimo/config.hpp"
#include "cfomimo/rng.hpp"

namespace cfomimo {

/// FIR tap gains h_mk[l] for every antenna m, user k and tap l; constant over
/// one coherence interval.
class ChannelRealization {
public:
    ChannelRealization() = default;
    ChannelRealization(int M, int K, int L) : M_(M), K_(K), L_(L), h_(std::size_t(M) * K * L) {}

    int antennas() const { return M_; }
    int users() const { return K_; }
    int taps() const { return L_; }

    cplx& operator()(int m, int k, int l) { return h_[index(m, k, l)]; }
    const cplx& operator()(int m, int k, int l) const { return h_[index(m, k, l)]; }

    const std::vector<cplx>& data() const { return h_; }
    std::vector<cplx>& data() { return h_; }

private:
    std::size_t index(int m, int k, int l) const {
        return (std::size_t(m) * K_ + k) * L_ + l;
    }
    int M_ = 0, K_ = 0, L_ = 0;
    std::vector<cplx> h_;
};

/// True CFOs and, once estimated, their estimates. Radians per channel use.
struct CfoState {
    std::vector<double> omega;
    std::vector<double> omega_hat;

    double delta(int k) const { return omega_hat[k] - omega[k]; }
};

/// i.i.d. CN(0, sigma^2_{h,k,l}) entries.
ChannelRealization draw_channel(const SystemConfig& config, RngStream& rng);

/// Each omega_k uniform on [-omega_max, omega_max]; omega_hat left empty.
CfoState draw_cfos(const SystemConfig& config, RngStream& rng);

/// G_k = sum_{m,l} |h_mk[l]|^2 / (M theta_k). Unit mean, tends to 1 as M grows.
double channel_gain_ratio(const ChannelRealization& h, const PowerDelayProfile& pdp, int k);

// Debug dump: magic "CFOCHAN\0", u32 version, u32 M, K, L, then M*K*L
// little-endian complex64 (re, im float32) pairs in (m, k, l) order.
inline constexpr std::uint32_t kChannelDumpVersion = 1;
void write_channel_dump(std::ostream& out, const ChannelRealization& h);
ChannelRealization read_channel_dump(std::istream& in);

}  // namespace cfomimo
