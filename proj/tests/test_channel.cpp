#include "doctest.h"

#include <cmath>
#include <sstream>

#include "cfomimo/channel.hpp"
#include "cfomimo/errors.hpp"

using namespace cfomimo;

namespace {

SystemConfig small(int M, int K, int L) {
    SystemConfig c;
    c.M = M;
    c.K = K;
    c.L = L;
    c.N = 2 * K * L;
    c.N_u = K * L + 2 * L;
    return with_uniform_pdp(c);
}

}  // namespace

TEST_CASE("channel taps have the PDP variance") {
    // 1e5 draws of each tap of a single-antenna single-user L=4 channel.
    const SystemConfig c = small(1, 1, 4);
    const int n = 100000;
    double sum[4] = {};
    double sum2[4] = {};
    for (int i = 0; i < n; ++i) {
        RngStream rng(11, i, StreamPurpose::channel);
        const auto h = draw_channel(c, rng);
        for (int l = 0; l < 4; ++l) {
            const double p = std::norm(h(0, 0, l));
            sum[l] += p;
            sum2[l] += p * p;
        }
    }
    for (int l = 0; l < 4; ++l) {
        const double mean = sum[l] / n;
        const double se = std::sqrt((sum2[l] / n - mean * mean) / n);
        CHECK(std::abs(mean - 0.25) <= 3 * se);
    }
}

TEST_CASE("scaling the PDP scales tap power") {
    SystemConfig a = small(1, 1, 2);
    SystemConfig b = a;
    b.pdp = PowerDelayProfile({{2.0, 2.0}});
    RngStream ra(5), rb(5);
    const auto ha = draw_channel(a, ra);
    const auto hb = draw_channel(b, rb);
    for (int l = 0; l < 2; ++l)
        CHECK(std::norm(hb(0, 0, l)) == doctest::Approx(4.0 * std::norm(ha(0, 0, l))));
}

TEST_CASE("fixed seed reproduces the realization bit for bit") {
    const SystemConfig c = small(8, 2, 3);
    RngStream r1(42, 7, StreamPurpose::channel), r2(42, 7, StreamPurpose::channel);
    CHECK(draw_channel(c, r1).data() == draw_channel(c, r2).data());
    RngStream r3(42, 8, StreamPurpose::channel);
    RngStream r4(42, 7, StreamPurpose::channel);
    CHECK(draw_channel(c, r3).data() != draw_channel(c, r4).data());
}

TEST_CASE("distinct taps are uncorrelated") {
    const SystemConfig c = small(2, 2, 2);
    const int n = 50000;
    cplx acc{};
    double sum2 = 0;
    for (int i = 0; i < n; ++i) {
        RngStream rng(3, i, StreamPurpose::channel);
        const auto h = draw_channel(c, rng);
        const cplx v = h(0, 0, 0) * std::conj(h(1, 1, 1));
        acc += v;
        sum2 += std::norm(v);
    }
    const double se = std::sqrt(sum2 / n / n / 2);  // per real/imag part
    CHECK(std::abs(acc.real() / n) <= 3 * se);
    CHECK(std::abs(acc.imag() / n) <= 3 * se);
}

TEST_CASE("CFO draws") {
    SystemConfig c = small(1, 4, 1);
    SUBCASE("inside the bound, zero mean") {
        const double w = c.omega_max();
        const int n = 1000000 / 4;
        double sum = 0;
        for (int i = 0; i < n; ++i) {
            RngStream rng(9, i, StreamPurpose::cfo);
            for (double o : draw_cfos(c, rng).omega) {
                CHECK_UNARY(std::abs(o) <= w);
                sum += o;
            }
        }
        // uniform on [-w, w] has variance w^2/3
        const double se = w / std::sqrt(3.0) / std::sqrt(4.0 * n);
        CHECK(std::abs(sum / (4.0 * n)) <= 3 * se);
    }
    SUBCASE("kappa = 0 gives zero CFO") {
        c.kappa_ppm = 0;
        RngStream rng(1);
        for (double o : draw_cfos(c, rng).omega) CHECK(o == 0.0);
    }
}

TEST_CASE("gain ratio G_k") {
    SUBCASE("taps at their PDP power give exactly 1") {
        const SystemConfig c = small(3, 2, 2);
        ChannelRealization h(3, 2, 2);
        for (int m = 0; m < 3; ++m)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) h(m, k, l) = std::polar(std::sqrt(0.5), 0.3 * m + l);
        CHECK(channel_gain_ratio(h, c.pdp, 0) == doctest::Approx(1.0));
        CHECK(channel_gain_ratio(h, c.pdp, 1) == doctest::Approx(1.0));
    }
    SUBCASE("hand-computed M=2, K=1, L=1") {
        const SystemConfig c = small(2, 1, 1);
        ChannelRealization h(2, 1, 1);
        h(0, 0, 0) = {1.0, 2.0};   // |h|^2 = 5
        h(1, 0, 0) = {0.0, -1.0};  // |h|^2 = 1
        CHECK(channel_gain_ratio(h, c.pdp, 0) == doctest::Approx(3.0));
    }
    SUBCASE("concentrates around 1 as M grows") {
        double var_small = 0, var_large = 0;
        const int n = 2000;
        for (int M : {16, 256}) {
            const SystemConfig c = small(M, 1, 2);
            double s = 0, s2 = 0;
            for (int i = 0; i < n; ++i) {
                RngStream rng(21, i, StreamPurpose::channel);
                const double g = channel_gain_ratio(draw_channel(c, rng), c.pdp, 0);
                s += g;
                s2 += g * g;
            }
            const double mean = s / n;
            const double var = s2 / n - mean * mean;
            CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
            (M == 16 ? var_small : var_large) = var;
        }
        // Var(G) = 1/(M L) for a uniform PDP: 16x more antennas, ~16x smaller
        CHECK(var_small / var_large == doctest::Approx(16.0).epsilon(0.25));
    }
}

TEST_CASE("channel dump round trip") {
    const SystemConfig c = small(3, 2, 2);
    RngStream rng(4);
    const auto h = draw_channel(c, rng);
    std::stringstream ss;
    write_channel_dump(ss, h);
    CHECK(ss.str().size() == 8 + 16 + 3 * 2 * 2 * 8);
    CHECK(ss.str().substr(0, 7) == "CFOCHAN");
    const auto back = read_channel_dump(ss);
    CHECK(back.antennas() == 3);
    for (std::size_t i = 0; i < h.data().size(); ++i) {
        CHECK(back.data()[i].real() == static_cast<float>(h.data()[i].real()));
        CHECK(back.data()[i].imag() == static_cast<float>(h.data()[i].imag()));
    }
    std::stringstream bad("NOTADUMP....");
    CHECK_THROWS_AS(read_channel_dump(bad), ShapeError);
}
