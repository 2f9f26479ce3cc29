#include "cfomimo/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

#include "cfomimo/cfo.hpp"
#include "cfomimo/channel.hpp"
#include "cfomimo/chest.hpp"
#include "cfomimo/errors.hpp"
#include "cfomimo/frame.hpp"
#include "cfomimo/rng.hpp"

namespace cfomimo {

const char* mode_name(SimMode mode) {
    switch (mode) {
        case SimMode::analytic: return "analytic";
        case SimMode::full: return "full";
        case SimMode::zero_cfo: return "zero_cfo";
    }
    return "?";
}

SimMode parse_mode(const std::string& name) {
    if (name == "analytic") return SimMode::analytic;
    if (name == "full") return SimMode::full;
    if (name == "zero_cfo") return SimMode::zero_cfo;
    throw ConfigError("unknown mode '" + name + "' (analytic|full|zero_cfo)");
}

void RunningMoments::merge(const RunningMoments& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    const std::int64_t n = n_ + o.n_;
    const double d = o.mean_ - mean_;
    mean_ += d * o.n_ / n;
    m2_ += o.m2_ + d * d * double(n_) * o.n_ / n;
    n_ = n;
}

double CellStats::sample_variance(Component c) const {
    const auto i = static_cast<std::size_t>(c);
    const std::int64_t n = power[i].count();
    if (n < 2) return 0.0;
    const double mu2 = re[i].mean() * re[i].mean() + im[i].mean() * im[i].mean();
    return double(n) / (n - 1) * (power[i].mean() - mu2);
}

double CellStats::variance_stderr(Component c) const {
    return power[static_cast<std::size_t>(c)].stderr_of_mean();
}

void CellStats::merge(const CellStats& o) {
    for (int i = 0; i < kComponentCount; ++i) {
        power[i].merge(o.power[i]);
        re[i].merge(o.re[i]);
        im[i].merge(o.im[i]);
    }
    cross_re.merge(o.cross_re);
    cross_im.merge(o.cross_im);
}

std::vector<int> default_probes(const SystemConfig& config, int count) {
    const DerivedFrame f = validate(config);
    std::vector<int> p;
    if (count <= 1 || f.N_D == 1) return {f.data_start};
    for (int i = 0; i < count; ++i) {
        const int t = f.data_start + static_cast<int>(
            std::llround(double(f.data_end - f.data_start) * i / (count - 1)));
        if (p.empty() || p.back() != t) p.push_back(t);
    }
    return p;
}

namespace {

constexpr std::int64_t kChunk = 256;

struct Partial {
    std::vector<CellStats> cells;
    std::vector<RunningMoments> cfo;
    double max_recon = 0.0;
};

template <class Work>
void for_each_chunk(std::int64_t n_chunks, int threads, Work&& work) {
    int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nt = std::max(1, std::min<int>(nt, static_cast<int>(std::min<std::int64_t>(n_chunks, 1 << 16))));
    std::atomic<std::int64_t> next{0};
    auto loop = [&] {
        for (std::int64_t c; (c = next.fetch_add(1)) < n_chunks;) work(c);
    };
    if (nt == 1) {
        loop();
        return;
    }
    std::vector<std::jthread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(loop);
}

CfoState trial_cfos(const SystemConfig& config, SimMode mode, const ChannelRealization& h,
                    std::uint64_t seed, std::uint64_t trial) {
    CfoState cfos;
    if (mode == SimMode::zero_cfo) {
        cfos.omega.assign(config.K, 0.0);
        cfos.omega_hat.assign(config.K, 0.0);
        return cfos;
    }
    RngStream cfo_rng(seed, trial, StreamPurpose::cfo);
    cfos = draw_cfos(config, cfo_rng);
    if (mode == SimMode::analytic) {
        RngStream res_rng(seed, trial, StreamPurpose::residual_cfo);
        cfos.omega_hat = draw_residual_cfo(cfos.omega, config, res_rng).omega_hat;
    } else {
        RngStream noise(seed, trial, StreamPurpose::pilot_noise);
        const RxFrame rx = propagate(build_cfo_pilot_frame(config), h, cfos.omega, config, noise);
        cfos.omega_hat = estimate_cfo_full(rx, config).omega_hat;
    }
    return cfos;
}

}  // namespace

TrialStats run_trials(const SystemConfig& config, std::int64_t n_trials, SimMode mode,
                      const std::vector<int>& probes, std::uint64_t seed, int threads) {
    const DerivedFrame f = validate(config);
    for (int t : probes)
        if (t < f.data_start || t > f.data_end)
            throw DomainError("probe t=" + std::to_string(t) + " outside the data window");

    const int K = config.K;
    TrialStats stats;
    stats.config = config;
    stats.mode = mode;
    stats.seed = seed;
    stats.trials = std::max<std::int64_t>(n_trials, 0);
    stats.probes = probes;
    stats.sigma2_omega.assign(K, 0.0);
    if (mode != SimMode::zero_cfo)
        for (int k = 0; k < K; ++k) stats.sigma2_omega[k] = mse_cfo(config, k);
    stats.cells.resize(std::size_t(K) * probes.size());
    for (int k = 0; k < K; ++k)
        for (std::size_t i = 0; i < probes.size(); ++i) {
            stats.cells[k * probes.size() + i].k = k;
            stats.cells[k * probes.size() + i].t = probes[i];
        }
    stats.cfo_sq_err.resize(K);
    if (stats.trials == 0) return stats;

    const std::int64_t n_chunks = (stats.trials + kChunk - 1) / kChunk;
    std::vector<Partial> partials(n_chunks);

    for_each_chunk(n_chunks, threads, [&](std::int64_t c) {
        Partial& part = partials[c];
        part.cells = stats.cells;
        part.cfo.resize(K);
        const std::int64_t end = std::min(stats.trials, (c + 1) * kChunk);
        for (std::int64_t trial = c * kChunk; trial < end; ++trial) {
            const auto tr = static_cast<std::uint64_t>(trial);
            RngStream ch_rng(seed, tr, StreamPurpose::channel);
            const ChannelRealization h = draw_channel(config, ch_rng);
            const CfoState cfos = trial_cfos(config, mode, h, seed, tr);
            for (int k = 0; k < K; ++k) {
                const double e = cfos.delta(k);
                part.cfo[k].add(e * e);
            }

            RngStream data_rng(seed, tr, StreamPurpose::data);
            const auto data = draw_data_symbols(config, data_rng);
            const TxFrame tx = build_ul_frame(config, data, data_rng);
            RngStream noise(seed, tr, StreamPurpose::ul_noise);
            const RxFrame rx = propagate(tx, h, cfos.omega, config, noise);
            const ChannelRealization h_hat = estimate_channel(rx, cfos.omega_hat, config);

            const Decomposer dec(rx, tx, h, h_hat, cfos, config, stats.sigma2_omega);
            for (CellStats& cell : part.cells) {
                const RxDecomposition d = dec(cell.k, cell.t);
                for (int i = 0; i < kComponentCount; ++i) {
                    const cplx v = d[static_cast<Component>(i)];
                    cell.power[i].add(std::norm(v));
                    cell.re[i].add(v.real());
                    cell.im[i].add(v.imag());
                }
                const cplx cross = d.es * std::conj(d.interference());
                cell.cross_re.add(cross.real());
                cell.cross_im.add(cross.imag());
                const double sum_abs = std::abs(d.x_hat);
                const double err = std::abs(d.x_hat - (d.es + d.interference()));
                part.max_recon = std::max(part.max_recon, sum_abs > 0 ? err / sum_abs : err);
            }
        }
    });

    for (const Partial& p : partials) {
        for (std::size_t i = 0; i < stats.cells.size(); ++i) stats.cells[i].merge(p.cells[i]);
        for (int k = 0; k < K; ++k) stats.cfo_sq_err[k].merge(p.cfo[k]);
        stats.max_reconstruction_error = std::max(stats.max_reconstruction_error, p.max_recon);
    }
    return stats;
}

std::vector<RunningMoments> run_cfo_trials(const SystemConfig& config, std::int64_t n_trials,
                                           std::uint64_t seed, int threads) {
    validate(config);
    const int K = config.K;
    std::vector<RunningMoments> total(K);
    if (n_trials <= 0) return total;
    const std::int64_t n_chunks = (n_trials + kChunk - 1) / kChunk;
    std::vector<std::vector<RunningMoments>> partials(n_chunks);
    const TxFrame pilot = build_cfo_pilot_frame(config);

    for_each_chunk(n_chunks, threads, [&](std::int64_t c) {
        auto& part = partials[c];
        part.resize(K);
        const std::int64_t end = std::min(n_trials, (c + 1) * kChunk);
        for (std::int64_t trial = c * kChunk; trial < end; ++trial) {
            const auto tr = static_cast<std::uint64_t>(trial);
            RngStream ch_rng(seed, tr, StreamPurpose::channel);
            const ChannelRealization h = draw_channel(config, ch_rng);
            RngStream cfo_rng(seed, tr, StreamPurpose::cfo);
            const CfoState cfos = draw_cfos(config, cfo_rng);
            RngStream noise(seed, tr, StreamPurpose::pilot_noise);
            const RxFrame rx = propagate(pilot, h, cfos.omega, config, noise);
            const auto est = estimate_cfo_full(rx, config);
            for (int k = 0; k < K; ++k) {
                const double e = est.omega_hat[k] - cfos.omega[k];
                part[k].add(e * e);
            }
        }
    });
    for (const auto& p : partials)
        for (int k = 0; k < K; ++k) total[k].merge(p[k]);
    return total;
}

bool ComparisonReport::cross_pass() const {
    return std::all_of(cross.begin(), cross.end(), [](const CrossCheck& c) { return c.pass; });
}

namespace {

bool within(double sample, double se, double model, double* z) {
    const double diff = sample - model;
    if (se > 0.0) {
        *z = diff / se;
        return std::abs(*z) <= 3.0;
    }
    *z = 0.0;
    return std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(model));
}

}  // namespace

ComparisonReport compare(const TrialStats& stats, const SystemConfig& config,
                         const VarianceModel& model) {
    if (stats.trials <= 0) throw EmptyStatsError("compare: no trials accumulated");
    ComparisonReport rep;
    rep.trials = stats.trials;
    rep.max_reconstruction_error = stats.max_reconstruction_error;
    int passed = 0;
    for (const CellStats& cell : stats.cells) {
        const double s2w = stats.sigma2_omega[cell.k];
        const ComponentVariances mv = model(cell.k, cell.t, config, s2w);
        double sum_se2 = 0.0, sum_other = 0.0;
        for (int i = 0; i < kComponentCount; ++i) {
            const auto c = static_cast<Component>(i);
            VarianceCheck v;
            v.k = cell.k;
            v.t = cell.t;
            v.component = c;
            v.sample = cell.sample_variance(c);
            v.stderr_ = cell.variance_stderr(c);
            v.model = mv[c];
            v.pass = within(v.sample, v.stderr_, v.model, &v.z);
            passed += v.pass;
            rep.variances.push_back(v);
            if (c != Component::es) {
                sum_other += v.sample;
                sum_se2 += v.stderr_ * v.stderr_;
            }
        }

        CrossCheck x;
        x.k = cell.k;
        x.t = cell.t;
        x.re = cell.cross_re.mean();
        x.im = cell.cross_im.mean();
        x.se_re = cell.cross_re.stderr_of_mean();
        x.se_im = cell.cross_im.stderr_of_mean();
        double zr = 0, zi = 0;
        x.pass = within(x.re, x.se_re, 0.0, &zr) && within(x.im, x.se_im, 0.0, &zi);
        rep.cross.push_back(x);

        SinrCheck s;
        s.k = cell.k;
        s.t = cell.t;
        const double es = cell.sample_variance(Component::es);
        const double se_es = cell.variance_stderr(Component::es);
        s.empirical = sum_other > 0 ? es / sum_other : 0.0;
        const auto [c1, c2] = sinr_constants(config.pdp, cell.k);
        s.model = sinr(cell.k, cell.t, config.L, config.gamma(cell.k), s2w, config.M, config.K,
                       c1, c2);
        if (es > 0 && sum_other > 0)
            s.stderr_ = s.empirical * std::sqrt(se_es * se_es / (es * es) +
                                                sum_se2 / (sum_other * sum_other));
        s.pass = within(s.empirical, s.stderr_, s.model, &s.z);
        rep.sinr.push_back(s);
    }
    rep.variance_pass_fraction =
        rep.variances.empty() ? 0.0 : double(passed) / double(rep.variances.size());
    return rep;
}

std::string ComparisonReport::to_csv() const {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "k,t,component,sample_var,stderr,model_var,z,pass\n";
    for (const auto& v : variances)
        os << v.k + 1 << ',' << v.t << ',' << component_name(v.component) << ',' << v.sample << ','
           << v.stderr_ << ',' << v.model << ',' << v.z << ',' << (v.pass ? 1 : 0) << '\n';
    for (const auto& x : cross)
        os << x.k + 1 << ',' << x.t << ",es_w_cross_re," << x.re << ',' << x.se_re << ",0,"
           << (x.se_re > 0 ? x.re / x.se_re : 0.0) << ',' << (x.pass ? 1 : 0) << '\n'
           << x.k + 1 << ',' << x.t << ",es_w_cross_im," << x.im << ',' << x.se_im << ",0,"
           << (x.se_im > 0 ? x.im / x.se_im : 0.0) << ',' << (x.pass ? 1 : 0) << '\n';
    for (const auto& s : sinr)
        os << s.k + 1 << ',' << s.t << ",sinr," << s.empirical << ',' << s.stderr_ << ','
           << s.model << ',' << s.z << ',' << (s.pass ? 1 : 0) << '\n';
    return os.str();
}

std::string ComparisonReport::summary() const {
    std::ostringstream os;
    const auto npass = std::count_if(variances.begin(), variances.end(),
                                     [](const VarianceCheck& v) { return v.pass; });
    const auto xpass =
        std::count_if(cross.begin(), cross.end(), [](const CrossCheck& c) { return c.pass; });
    os << (pass() ? "PASS" : "FAIL") << ": " << npass << "/" << variances.size()
       << " variance cells within 3 stderr (" << std::fixed << std::setprecision(1)
       << 100.0 * variance_pass_fraction << "%, need >= 95%), " << xpass << "/" << cross.size()
       << " ES-W cross cells within 3 stderr, reconstruction error " << std::scientific
       << std::setprecision(2) << max_reconstruction_error << " over " << trials << " trials"
       << " (3-sigma rule: expect ~0.3% of cells outside by chance)";
    return os.str();
}

}  // namespace cfomimo
