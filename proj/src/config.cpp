#include "cfomimo/config.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cfomimo/errors.hpp"

namespace cfomimo {

PowerDelayProfile::PowerDelayProfile(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
    for (const auto& r : rows_) {
        if (r.size() != rows_.front().size())
            throw DimensionError("PDP rows must all have the same number of taps");
    }
}

double PowerDelayProfile::theta(int k) const {
    return std::accumulate(rows_[k].begin(), rows_[k].end(), 0.0);
}

double PowerDelayProfile::sum_sq(int k) const {
    double s = 0.0;
    for (double v : rows_[k]) s += v * v;
    return s;
}

double PowerDelayProfile::theta_total() const {
    double s = 0.0;
    for (int k = 0; k < users(); ++k) s += theta(k);
    return s;
}

PowerDelayProfile uniform_pdp(int K, int L) {
    if (K < 1 || L < 1) throw DimensionError("uniform_pdp needs K, L >= 1");
    return PowerDelayProfile(
        std::vector<std::vector<double>>(K, std::vector<double>(L, 1.0 / L)));
}

double SystemConfig::gamma(int k) const {
    if (sigma2 == 0.0) return std::numeric_limits<double>::infinity();
    return p_u / sigma2 * pdp.theta(k);
}

SystemConfig with_uniform_pdp(SystemConfig config) {
    config.pdp = uniform_pdp(config.K, config.L);
    return config;
}

SinrConstants sinr_constants(const PowerDelayProfile& pdp, int k) {
    const double total = pdp.theta_total();
    const double th = pdp.theta(k);
    return {1.0 + total / (pdp.users() * th), total / th};
}

DerivedFrame validate(const SystemConfig& c) {
    if (c.M < 1 || c.K < 1 || c.L < 1 || c.N < 1 || c.N_u < 1)
        throw DimensionError("M, K, L, N, N_u must be positive");
    if (c.pdp.users() != c.K || c.pdp.taps() != c.L) {
        std::ostringstream os;
        os << "PDP is " << c.pdp.users() << "x" << c.pdp.taps() << ", expected " << c.K
           << "x" << c.L;
        throw DimensionError(os.str());
    }
    for (int k = 0; k < c.K; ++k)
        for (int l = 0; l < c.L; ++l)
            if (!(c.pdp(k, l) > 0.0))
                throw DimensionError("PDP entries must be strictly positive");
    if (!(c.p_u > 0.0)) throw DomainError("p_u must be positive");
    if (!(c.sigma2 >= 0.0)) throw DomainError("sigma2 must be non-negative");
    if (!(c.kappa_ppm >= 0.0) || !(c.f_c_hz > 0.0) || !(c.bw_hz > 0.0))
        throw DomainError("kappa_ppm >= 0, f_c_hz > 0 and bw_hz > 0 required");

    const int KL = c.K * c.L;
    if (c.N < 2 * KL) {
        std::ostringstream os;
        os << "CFO pilot length N=" << c.N << " must be at least 2KL=" << 2 * KL;
        throw TimelineError(os.str());
    }
    const int min_nu = KL + 2 * (c.L - 1) + 1;
    if (c.N_u < min_nu) {
        std::ostringstream os;
        os << "uplink slot N_u=" << c.N_u << " shorter than KL+2(L-1)+1=" << min_nu;
        throw TimelineError(os.str());
    }
    if (!c.allow_large_cfo && c.omega_max() * KL > std::numbers::pi / 10.0) {
        std::ostringstream os;
        os << "max|omega|*KL = " << c.omega_max() * KL
           << " exceeds pi/10; set allow_large_cfo to override";
        throw CfoBoundError(os.str());
    }

    DerivedFrame f;
    f.B = (c.N + KL - 1) / KL;
    f.full_blocks = c.N / KL;
    f.data_start = KL + c.L - 1;
    f.data_end = c.N_u - c.L;
    f.N_D = c.N_u - KL - 2 * (c.L - 1);
    return f;
}

}  // namespace cfomimo
