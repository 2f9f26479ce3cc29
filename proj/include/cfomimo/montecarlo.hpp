#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cfomimo/analytic.hpp"
#include "cfomimo/config.hpp"
#include "cfomimo/trmrc.hpp"

namespace cfomimo {

enum class SimMode { analytic, full, zero_cfo };

const char* mode_name(SimMode mode);
SimMode parse_mode(const std::string& name);

/// Streaming mean and M2 (Welford), mergeable with Chan's pairwise update.
class RunningMoments {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / n_;
        m2_ += d * (x - mean_);
    }
    void merge(const RunningMoments& o);

    std::int64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / (n_ - 1) : 0.0; }
    double stderr_of_mean() const { return n_ > 1 ? std::sqrt(variance() / n_) : 0.0; }

private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Statistics of one (user, channel use) probe cell.
struct CellStats {
    int k = 0;
    int t = 0;
    std::array<RunningMoments, kComponentCount> power;  // |c|^2
    std::array<RunningMoments, kComponentCount> re;
    std::array<RunningMoments, kComponentCount> im;
    RunningMoments cross_re, cross_im;  // es * conj(w)

    /// Unbiased complex sample variance E|c - mean|^2.
    double sample_variance(Component c) const;
    /// Standard error of sample_variance (from the spread of |c|^2).
    double variance_stderr(Component c) const;

    void merge(const CellStats& o);
};

struct TrialStats {
    SystemConfig config;
    SimMode mode = SimMode::analytic;
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    std::vector<int> probes;
    std::vector<double> sigma2_omega;     // per user, used for E[A]
    std::vector<CellStats> cells;         // user-major, then probe order
    std::vector<RunningMoments> cfo_sq_err;  // (omega_hat - omega)^2 per user
    double max_reconstruction_error = 0;  // max |x_hat - sum of parts| / |x_hat|

    const CellStats& cell(int k, int probe_index) const {
        return cells[std::size_t(k) * probes.size() + probe_index];
    }
};

/// `count` channel uses spread evenly over [data_start, data_end].
std::vector<int> default_probes(const SystemConfig& config, int count = 8);

/// Runs n_trials independent waveform-level trials. Each trial draws a fresh
/// channel and CFOs (estimated per mode), builds and propagates the uplink
/// slot, estimates the channel, and decomposes the TR-MRC output at every
/// probe. Trial i uses substreams keyed on (seed, i); results are merged in a
/// fixed chunk order, so they do not depend on `threads`.
TrialStats run_trials(const SystemConfig& config, std::int64_t n_trials, SimMode mode,
                      const std::vector<int>& probes, std::uint64_t seed, int threads = 0);

/// Only the CFO estimation stage: per trial draw channel + CFOs, run the full
/// estimator on a propagated pilot slot, accumulate squared errors.
std::vector<RunningMoments> run_cfo_trials(const SystemConfig& config, std::int64_t n_trials,
                                           std::uint64_t seed, int threads = 0);

using VarianceModel = std::function<ComponentVariances(int, int, const SystemConfig&, double)>;

struct VarianceCheck {
    int k = 0, t = 0;
    Component component = Component::es;
    double sample = 0, stderr_ = 0, model = 0, z = 0;
    bool pass = false;
};

struct CrossCheck {
    int k = 0, t = 0;
    double re = 0, im = 0, se_re = 0, se_im = 0;
    bool pass = false;
};

struct SinrCheck {
    int k = 0, t = 0;
    double empirical = 0, model = 0, stderr_ = 0, z = 0;
    bool pass = false;
};

struct ComparisonReport {
    std::int64_t trials = 0;
    std::vector<VarianceCheck> variances;
    std::vector<CrossCheck> cross;
    std::vector<SinrCheck> sinr;
    double variance_pass_fraction = 0;
    double max_reconstruction_error = 0;

    bool variances_pass() const { return variance_pass_fraction >= 0.95; }
    bool cross_pass() const;
    bool reconstruction_pass() const { return max_reconstruction_error <= 1e-9; }
    bool pass() const { return variances_pass() && cross_pass() && reconstruction_pass(); }

    std::string to_csv() const;
    std::string summary() const;
};

/// z-scores of every sampled component variance against `model` (the closed-form
/// variances by default), the ES-W cross-correlation against zero, and the empirical SINR
/// against the closed form. A cell passes at |z| <= 3. Throws EmptyStatsError
/// when stats hold no trials.
ComparisonReport compare(const TrialStats& stats, const SystemConfig& config,
                         const VarianceModel& model = component_variances);

}  // namespace cfomimo
