#include "cfomimo/channel.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "cfomimo/errors.hpp"

namespace cfomimo {

ChannelRealization draw_channel(const SystemConfig& config, RngStream& rng) {
    ChannelRealization h(config.M, config.K, config.L);
    for (int m = 0; m < config.M; ++m)
        for (int k = 0; k < config.K; ++k)
            for (int l = 0; l < config.L; ++l) h(m, k, l) = rng.complex_normal(config.pdp(k, l));
    return h;
}

CfoState draw_cfos(const SystemConfig& config, RngStream& rng) {
    CfoState s;
    const double w = config.omega_max();
    s.omega.resize(config.K);
    for (auto& o : s.omega) o = (w == 0.0) ? 0.0 : rng.uniform(-w, w);
    return s;
}

double channel_gain_ratio(const ChannelRealization& h, const PowerDelayProfile& pdp, int k) {
    double num = 0.0;
    for (int m = 0; m < h.antennas(); ++m)
        for (int l = 0; l < h.taps(); ++l) num += std::norm(h(m, k, l));
    return num / (h.antennas() * pdp.theta(k));
}

namespace {

constexpr std::array<char, 8> kMagic{'C', 'F', 'O', 'C', 'H', 'A', 'N', '\0'};

void put_u32(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw ShapeError("truncated channel dump");
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

}  // namespace

void write_channel_dump(std::ostream& out, const ChannelRealization& h) {
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kChannelDumpVersion);
    put_u32(out, static_cast<std::uint32_t>(h.antennas()));
    put_u32(out, static_cast<std::uint32_t>(h.users()));
    put_u32(out, static_cast<std::uint32_t>(h.taps()));
    for (const cplx& z : h.data()) {
        put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(z.real())));
        put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(z.imag())));
    }
}

ChannelRealization read_channel_dump(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw ShapeError("not a channel dump");
    if (const auto v = get_u32(in); v != kChannelDumpVersion)
        throw ShapeError("unsupported channel dump version " + std::to_string(v));
    const auto M = get_u32(in), K = get_u32(in), L = get_u32(in);
    ChannelRealization h(static_cast<int>(M), static_cast<int>(K), static_cast<int>(L));
    for (cplx& z : h.data()) {
        const float re = std::bit_cast<float>(get_u32(in));
        const float im = std::bit_cast<float>(get_u32(in));
        z = {re, im};
    }
    return h;
}

}  // namespace cfomimo
