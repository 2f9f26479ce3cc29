#pragma once

#include <span>

#include "cfomimo/channel.hpp"
#include "cfomimo/config.hpp"
#include "cfomimo/frame.hpp"

namespace cfomimo {

/// ML channel estimate from the uplink pilot segment after CFO compensation:
///   h_hat_mk[l] = r_m[kL + l] e^{-j omega_hat_k (kL + l)} / sqrt(KL p_u).
/// Users' pilot windows are disjoint, so each estimate sees only its own impulse.
ChannelRealization estimate_channel(const RxFrame& rx_ul, std::span<const double> omega_hat,
                                    const SystemConfig& config);

/// Effective channel h_mk[l] e^{-j delta_k (kL + l)} seen after compensation
/// with a residual CFO delta_k = omega_hat_k - omega_k.
ChannelRealization effective_channel(const ChannelRealization& h, const CfoState& cfos);

}  // namespace cfomimo
