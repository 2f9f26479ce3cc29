#include "cfomimo/trmrc.hpp"

#include <cmath>

#include "cfomimo/chest.hpp"
#include "cfomimo/errors.hpp"

namespace cfomimo {

cplx detect(const RxFrame& rx, const ChannelRealization& h_hat, std::span<const double> omega_hat,
            int k, int t) {
    const int L = h_hat.taps();
    if (t < 0 || t + L > rx.length()) throw ShapeError("detect: t outside the received slot");
    cplx acc{};
    for (int l = 0; l < L; ++l) {
        const cplx derot = std::polar(1.0, -omega_hat[k] * (t + l));
        cplx s{};
        for (int m = 0; m < rx.antennas(); ++m) s += std::conj(h_hat(m, k, l)) * rx(m, t + l);
        acc += s * derot;
    }
    return acc;
}

std::vector<cplx> detect_user(const RxFrame& rx, const ChannelRealization& h_hat,
                              std::span<const double> omega_hat, const SystemConfig& config,
                              int k) {
    const DerivedFrame f = validate(config);
    std::vector<cplx> out;
    out.reserve(f.N_D);
    for (int t = f.data_start; t <= f.data_end; ++t) out.push_back(detect(rx, h_hat, omega_hat, k, t));
    return out;
}

double mean_gain(const SystemConfig& config, int k, int t, double sigma2_omega) {
    const double tau = t - k * config.L;
    return std::sqrt(config.p_u) * config.M * config.pdp.theta(k) *
           std::exp(-sigma2_omega * tau * tau / 2.0);
}

const char* component_name(Component c) {
    switch (c) {
        case Component::es: return "es";
        case Component::sif: return "sif";
        case Component::isi: return "isi";
        case Component::mui: return "mui";
        case Component::en: return "en";
    }
    return "?";
}

cplx RxDecomposition::operator[](Component c) const {
    switch (c) {
        case Component::es: return es;
        case Component::sif: return sif;
        case Component::isi: return isi;
        case Component::mui: return mui;
        case Component::en: return en;
    }
    return {};
}

Decomposer::Decomposer(const RxFrame& rx, const TxFrame& tx, const ChannelRealization& h,
                       const ChannelRealization& h_hat, const CfoState& cfos,
                       const SystemConfig& config, std::vector<double> sigma2_omega)
    : rx_(rx),
      tx_(tx),
      h_hat_(h_hat),
      cfos_(cfos),
      config_(config),
      sigma2_omega_(std::move(sigma2_omega)),
      K_(h.users()),
      L_(h.taps()) {
    if (static_cast<int>(sigma2_omega_.size()) != K_ || tx.users() != K_)
        throw ShapeError("Decomposer: user count mismatch");
    const ChannelRealization ht = effective_channel(h, cfos);
    gram_.assign(std::size_t(K_) * L_ * K_ * L_, cplx{});
    for (int k = 0; k < K_; ++k)
        for (int l = 0; l < L_; ++l)
            for (int q = 0; q < K_; ++q)
                for (int lp = 0; lp < L_; ++lp) {
                    cplx s{};
                    for (int m = 0; m < h.antennas(); ++m) s += std::conj(ht(m, k, l)) * ht(m, q, lp);
                    gram_[((std::size_t(k) * L_ + l) * K_ + q) * L_ + lp] = s;
                }
}

RxDecomposition Decomposer::operator()(int k, int t) const {
    const double sp = std::sqrt(config_.p_u);
    const double dk = cfos_.delta(k);
    const double tau = t - k * L_;
    const cplx xk = tx_(k, t);

    RxDecomposition d;
    d.x_hat = detect(rx_, h_hat_, cfos_.omega_hat, k, t);

    cplx energy{};
    for (int l = 0; l < L_; ++l) energy += gram(k, l, k, l);
    const cplx A = sp * energy * std::polar(1.0, -dk * tau);
    const double EA = mean_gain(config_, k, t, sigma2_omega_[k]);

    cplx isi{};
    for (int l = 0; l < L_; ++l)
        for (int lp = 0; lp < L_; ++lp) {
            if (lp == l) continue;
            isi += gram(k, l, k, lp) * tx_(k, t - lp + l) * std::polar(1.0, -dk * (l - lp));
        }
    d.isi = sp * isi * std::polar(1.0, -dk * tau);

    cplx mui{};
    const double wk = cfos_.omega_hat[k];
    for (int q = 0; q < K_; ++q) {
        if (q == k) continue;
        const double wq = cfos_.omega_hat[q];
        const double dq = cfos_.delta(q);
        for (int l = 0; l < L_; ++l)
            for (int lp = 0; lp < L_; ++lp) {
                const double phase = (wq - wk) * (t + l) - dq * (t - q * L_ + (l - lp));
                mui += gram(k, l, q, lp) * tx_(q, t - lp + l) * std::polar(1.0, phase);
            }
    }
    d.mui = sp * mui;

    d.es = EA * xk;
    d.sif = (A - EA) * xk;
    d.en = d.x_hat - A * xk - d.isi - d.mui;
    return d;
}

RxDecomposition decompose(const RxFrame& rx, const ChannelRealization& h,
                          const ChannelRealization& h_hat, const CfoState& cfos, const TxFrame& tx,
                          const SystemConfig& config, std::span<const double> sigma2_omega, int k,
                          int t) {
    Decomposer dec(rx, tx, h, h_hat, cfos, config,
                   std::vector<double>(sigma2_omega.begin(), sigma2_omega.end()));
    return dec(k, t);
}

}  // namespace cfomimo
