#include "cfomimo/analytic.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "cfomimo/cfo.hpp"
#include "cfomimo/errors.hpp"

namespace cfomimo {

double ComponentVariances::operator[](Component c) const {
    switch (c) {
        case Component::es: return es;
        case Component::sif: return sif;
        case Component::isi: return isi;
        case Component::mui: return mui;
        case Component::en: return en;
    }
    return 0.0;
}

ComponentVariances component_variances(int k, int t, const SystemConfig& c, double sigma2_omega) {
    const double M = c.M, p = c.p_u, s2 = c.sigma2;
    const double th = c.pdp.theta(k);
    const double th2 = c.pdp.sum_sq(k);
    const double total = c.pdp.theta_total();
    const double tau = t - k * c.L;
    const double e = std::exp(-sigma2_omega * tau * tau);

    ComponentVariances v;
    v.es = M * M * p * th * th * e;
    v.sif = M * M * p * th * th * (1.0 - e) + M * p * th2;
    v.isi = M * p * (th * th - th2);
    v.mui = M * p * th * (total - th);
    v.en = M * s2 / c.K * total + M * s2 * s2 / (c.K * p) + M * s2 * th;
    return v;
}

double sinr(int k, int t, int L, double gamma, double sigma2_omega, int M, int K, double c1,
            double c2) {
    const double tau = t - k * L;
    const double e = std::exp(-sigma2_omega * tau * tau);
    const double inv_g = 1.0 / gamma;
    const double den = -std::expm1(-sigma2_omega * tau * tau) + inv_g * inv_g / (double(M) * K) +
                       c1 * inv_g / M + c2 / M;
    return e / den;
}

namespace {

double residual_mse(const SystemConfig& c, double gamma) {
    return mse_cfo(gamma, c.M, c.N, c.K, c.L, 1.0);
}

double frame_rate(int k, const SystemConfig& c, const DerivedFrame& f, double gamma,
                  RateMode mode) {
    const auto [c1, c2] = sinr_constants(c.pdp, k);
    const double s = mode == RateMode::residual ? residual_mse(c, gamma) : 0.0;
    double sum = 0.0;
    for (int t = f.data_start; t <= f.data_end; ++t)
        sum += std::log2(1.0 + sinr(k, t, c.L, gamma, s, c.M, c.K, c1, c2));
    return sum / c.N_u;
}

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

// Smallest x in [lo, hi] with f(x) >= target for a non-decreasing f.
double bisect_db(const std::function<double(double)>& f, double target, const SnrSearch& s) {
    if (!(s.hi_db > s.lo_db) || !(s.resolution_db > 0.0))
        throw DomainError("invalid SNR search bracket");
    double prev = -INFINITY;
    const int n = std::max(s.prescan_points, 2);
    for (int i = 0; i < n; ++i) {
        const double x = s.lo_db + (s.hi_db - s.lo_db) * i / (n - 1);
        const double v = f(x);
        if (v < prev - 1e-12 * std::max(1.0, std::abs(prev)))
            throw DomainError("rate is not monotone in gamma over the search bracket");
        prev = v;
    }
    if (f(s.lo_db) >= target) return s.lo_db;
    if (const double top = f(s.hi_db); top < target) {
        std::ostringstream os;
        os << "target " << target << " bpcu exceeds the reachable " << top << " bpcu at "
           << s.hi_db << " dB";
        throw UnachievableError(os.str());
    }
    double lo = s.lo_db, hi = s.hi_db;
    while (hi - lo > s.resolution_db) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= target) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace

SinrProfile rate_at_gamma(int k, const SystemConfig& c, double gamma, RateMode mode) {
    const DerivedFrame f = validate(c);
    const auto [c1, c2] = sinr_constants(c.pdp, k);
    SinrProfile p;
    p.k = k;
    p.t_first = f.data_start;
    p.gamma = gamma;
    p.sigma2_omega = mode == RateMode::residual ? residual_mse(c, gamma) : 0.0;
    p.sinr.reserve(f.N_D);
    double sum = 0.0;
    for (int t = f.data_start; t <= f.data_end; ++t) {
        const double v = sinr(k, t, c.L, gamma, p.sigma2_omega, c.M, c.K, c1, c2);
        p.sinr.push_back(v);
        sum += std::log2(1.0 + v);
    }
    p.rate = sum / c.N_u;
    return p;
}

SinrProfile rate(int k, const SystemConfig& c, RateMode mode) {
    return rate_at_gamma(k, c, c.gamma(k), mode);
}

double min_snr_for_rate(int k, double target_bpcu, const SystemConfig& c, RateMode mode,
                        const SnrSearch& search) {
    const DerivedFrame f = validate(c);
    return bisect_db([&](double db) { return frame_rate(k, c, f, db_to_lin(db), mode); },
                     target_bpcu, search);
}

double min_snr_for_use_rate(int k, int t, double target_bpcu, const SystemConfig& c,
                            RateMode mode, const SnrSearch& search) {
    validate(c);
    const auto [c1, c2] = sinr_constants(c.pdp, k);
    return bisect_db(
        [&](double db) {
            const double g = db_to_lin(db);
            const double s = mode == RateMode::residual ? residual_mse(c, g) : 0.0;
            return std::log2(1.0 + sinr(k, t, c.L, g, s, c.M, c.K, c1, c2));
        },
        target_bpcu, search);
}

double alpha(int k, int t, int N, int K, int L) {
    const double KL = double(K) * L;
    if (N <= K * L) throw DomainError("alpha: N must exceed KL");
    const double tau = t - double(k) * L;
    return tau * tau / (2.0 * (N - KL) * KL * KL);
}

double asymptotic_gap_db(double a) {
    if (!(a >= 0.0)) throw DomainError("asymptotic_gap_db: alpha must be non-negative");
    return 5.0 * std::log10(1.0 + a);
}

double theta_prime(double a, double R) {
    if (!(R > 0.0) || !(a >= 0.0)) throw DomainError("theta_prime: needs R > 0, alpha >= 0");
    const double q = -std::expm1(-R * std::numbers::ln2);  // 1 - 2^{-R}
    // g(theta) = (1 + theta) q - exp(-alpha theta) is increasing; g(0) < 0 and
    // g(1/(2^R - 1)) >= 0, so the root is bracketed.
    const auto g = [&](double th) { return (1.0 + th) * q - std::exp(-a * th); };
    double lo = 0.0, hi = 1.0 / std::expm1(R * std::numbers::ln2);
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double exact_asymptotic_gap_db(double a, double R) {
    const double theta0 = 1.0 / std::expm1(R * std::numbers::ln2);
    return 5.0 * std::log10(theta0 / theta_prime(a, R));
}

double theta_limit(int M, int K, double gamma) { return 1.0 / (double(M) * K * gamma * gamma); }

GapReport snr_gap_db(int k, double target_bpcu, const SystemConfig& c, const SnrSearch& search) {
    const DerivedFrame f = validate(c);
    GapReport r;
    r.gamma_required_db = min_snr_for_rate(k, target_bpcu, c, RateMode::residual, search);
    r.gamma0_required_db = min_snr_for_rate(k, target_bpcu, c, RateMode::zero_cfo, search);
    r.gap_db = r.gamma_required_db - r.gamma0_required_db;
    r.t_alpha = f.data_end;
    r.alpha_kt = alpha(k, f.data_end, c.N, c.K, c.L);
    r.theta_limit = theta_limit(c.M, c.K, db_to_lin(r.gamma_required_db));
    return r;
}

}  // namespace cfomimo
