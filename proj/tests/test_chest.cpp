#include "doctest.h"

#include <cmath>

#include "cfomimo/chest.hpp"
#include "cfomimo/montecarlo.hpp"

using namespace cfomimo;

namespace {

SystemConfig make(int M, int K, int L, int N, int N_u) {
    SystemConfig c;
    c.M = M;
    c.K = K;
    c.L = L;
    c.N = N;
    c.N_u = N_u;
    return with_uniform_pdp(c);
}

struct Pipeline {
    ChannelRealization h;
    CfoState cfos;
    ChannelRealization h_hat;
};

Pipeline run(const SystemConfig& c, std::vector<double> omega, std::vector<double> omega_hat,
             std::uint64_t trial) {
    RngStream rng(99, trial, StreamPurpose::channel);
    Pipeline p{draw_channel(c, rng), {std::move(omega), std::move(omega_hat)}, {}};
    RngStream data_rng(99, trial, StreamPurpose::data);
    RngStream noise_rng(99, trial, StreamPurpose::ul_noise);
    const auto data = draw_data_symbols(c, data_rng);
    const TxFrame tx = build_ul_frame(c, data, data_rng);
    const RxFrame rx = propagate(tx, p.h, p.cfos.omega, c, noise_rng);
    p.h_hat = estimate_channel(rx, p.cfos.omega_hat, c);
    return p;
}

}  // namespace

TEST_CASE("noiseless, perfectly compensated estimate is exact") {
    SystemConfig c = make(4, 3, 2, 12, 30);
    c.sigma2 = 0;
    const auto p = run(c, {0.01, -0.003, 0.0}, {0.01, -0.003, 0.0}, 0);
    for (std::size_t i = 0; i < p.h.data().size(); ++i)
        CHECK(std::abs(p.h_hat.data()[i] - p.h.data()[i]) < 1e-12);
}

TEST_CASE("noiseless estimate with residual CFO is the rotated channel") {
    SystemConfig c = make(4, 3, 2, 12, 30);
    c.sigma2 = 0;
    const auto p = run(c, {0.01, -0.003, 0.0}, {0.012, -0.0031, 0.002}, 1);
    const auto eff = effective_channel(p.h, p.cfos);
    for (int m = 0; m < 4; ++m)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 2; ++l) {
                CHECK(std::abs(p.h_hat(m, k, l)) == doctest::Approx(std::abs(p.h(m, k, l))));
                CHECK(std::abs(p.h_hat(m, k, l) - eff(m, k, l)) < 1e-12);
                const cplx expected =
                    p.h(m, k, l) * std::polar(1.0, -p.cfos.delta(k) * (k * c.L + l));
                CHECK(std::abs(eff(m, k, l) - expected) < 1e-12);
            }
}

TEST_CASE("estimation error variance is sigma2 / (K L p_u)") {
    SystemConfig c = make(1, 2, 2, 8, 20);
    c.p_u = 0.5;
    c.sigma2 = 1.3;
    const double expected = c.sigma2 / (c.K * c.L * c.p_u);
    RunningMoments err;
    for (int i = 0; i < 100000; ++i) {
        const auto p = run(c, {0.002, -0.001}, {0.0025, -0.0012}, i);
        const auto eff = effective_channel(p.h, p.cfos);
        err.add(std::norm(p.h_hat(0, 1, 1) - eff(0, 1, 1)));
    }
    CHECK(std::abs(err.mean() - expected) <= 3 * err.stderr_of_mean());
}

TEST_CASE("rotated channel keeps the CN(0, sigma_h^2) moments") {
    SystemConfig c = make(1, 1, 2, 4, 10);
    RunningMoments power, re, im;
    for (int i = 0; i < 50000; ++i) {
        RngStream rng(5, i, StreamPurpose::channel);
        const CfoState cfos{{0.0}, {0.4}};
        const auto eff = effective_channel(draw_channel(c, rng), cfos);
        power.add(std::norm(eff(0, 0, 1)));
        re.add(eff(0, 0, 1).real());
        im.add(eff(0, 0, 1).imag());
    }
    CHECK(std::abs(power.mean() - 0.5) <= 3 * power.stderr_of_mean());
    CHECK(std::abs(re.mean()) <= 3 * re.stderr_of_mean());
    CHECK(std::abs(im.mean()) <= 3 * im.stderr_of_mean());
    CHECK(re.variance() == doctest::Approx(0.25).epsilon(0.03));
}

TEST_CASE("other users' pilots do not leak into an estimate") {
    // Only user 1 has a nonzero channel; user 0's estimate must be exactly zero.
    SystemConfig c = make(2, 2, 3, 12, 30);
    c.sigma2 = 0;
    ChannelRealization h(2, 2, 3);
    for (int m = 0; m < 2; ++m)
        for (int l = 0; l < 3; ++l) h(m, 1, l) = {1.0 + m, -0.5 * l};
    RngStream rng(4);
    const auto data = draw_data_symbols(c, rng);
    const TxFrame tx = build_ul_frame(c, data, rng);
    const std::vector<double> w{0.01, 0.02};
    const RxFrame rx = propagate(tx, h, w, c, rng);
    const auto h_hat = estimate_channel(rx, w, c);
    for (int m = 0; m < 2; ++m)
        for (int l = 0; l < 3; ++l) {
            CHECK(h_hat(m, 0, l) == cplx{});
            CHECK(std::abs(h_hat(m, 1, l) - h(m, 1, l)) < 1e-12);
        }
}
