#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "cfomimo/errors.hpp"
#include "cfomimo/montecarlo.hpp"

using namespace cfomimo;

namespace {

SystemConfig small() {
    SystemConfig c;
    c.M = 16;
    c.K = 2;
    c.L = 2;
    c.N = 160;
    c.N_u = 200;
    return with_uniform_pdp(c);
}

bool same_bits(const RunningMoments& a, const RunningMoments& b) {
    return a.count() == b.count() && a.mean() == b.mean() && a.variance() == b.variance();
}

bool same_stats(const TrialStats& a, const TrialStats& b) {
    if (a.cells.size() != b.cells.size()) return false;
    for (std::size_t i = 0; i < a.cells.size(); ++i)
        for (int c = 0; c < kComponentCount; ++c)
            if (!same_bits(a.cells[i].power[c], b.cells[i].power[c]) ||
                !same_bits(a.cells[i].re[c], b.cells[i].re[c]) ||
                !same_bits(a.cells[i].im[c], b.cells[i].im[c]))
                return false;
    for (std::size_t k = 0; k < a.cfo_sq_err.size(); ++k)
        if (!same_bits(a.cfo_sq_err[k], b.cfo_sq_err[k])) return false;
    return a.max_reconstruction_error == b.max_reconstruction_error;
}

}  // namespace

TEST_CASE("running moments match a two-pass computation and merge") {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> d(3.0, 2.0);
    std::vector<double> xs(1001);
    for (auto& x : xs) x = d(gen);
    RunningMoments all, left, right;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        all.add(xs[i]);
        (i < 400 ? left : right).add(xs[i]);
    }
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    CHECK(all.mean() == doctest::Approx(mean).epsilon(1e-13));
    CHECK(all.variance() == doctest::Approx(ss / (xs.size() - 1)).epsilon(1e-12));
    left.merge(right);
    CHECK(left.count() == all.count());
    CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-13));
    CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
    RunningMoments empty;
    empty.merge(all);
    CHECK(same_bits(empty, all));
    CHECK(RunningMoments{}.variance() == 0.0);
}

TEST_CASE("standard errors shrink like 1/sqrt(n)") {
    const auto probes = std::vector<int>{110};
    const auto a = run_trials(small(), 400, SimMode::analytic, probes, 3, 1);
    const auto b = run_trials(small(), 6400, SimMode::analytic, probes, 3, 1);
    const double ratio = a.cell(0, 0).variance_stderr(Component::en) /
                         b.cell(0, 0).variance_stderr(Component::en);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
    for (int c = 0; c < kComponentCount; ++c)
        CHECK(b.cell(1, 0).sample_variance(static_cast<Component>(c)) >= 0.0);
}

TEST_CASE("default probes span the data window") {
    const SystemConfig c = small();
    const auto f = validate(c);
    const auto p = default_probes(c, 8);
    CHECK(p.size() == 8);
    CHECK(p.front() == f.data_start);
    CHECK(p.back() == f.data_end);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);
}

TEST_CASE("same seed gives identical statistics regardless of threads") {
    const SystemConfig c = small();
    const auto probes = default_probes(c, 3);
    for (SimMode mode : {SimMode::analytic, SimMode::full, SimMode::zero_cfo}) {
        const auto a = run_trials(c, 600, mode, probes, 42, 1);
        const auto b = run_trials(c, 600, mode, probes, 42, 3);
        CHECK(same_stats(a, b));
        const auto other = run_trials(c, 600, mode, probes, 43, 1);
        CHECK_FALSE(same_stats(a, other));
    }
}

TEST_CASE("analytic mode agrees with the closed-form variances on a short run") {
    const SystemConfig c = small();
    const auto stats = run_trials(c, 5000, SimMode::analytic, default_probes(c, 4), 7);
    CHECK(stats.trials == 5000);
    CHECK(stats.max_reconstruction_error <= 1e-9);
    const auto rep = compare(stats, c);
    CHECK(rep.variances.size() == std::size_t(2 * 4 * kComponentCount));
    CHECK(rep.variances_pass());
    CHECK(rep.cross_pass());
    CHECK(rep.reconstruction_pass());
    CHECK(rep.to_csv().rfind("k,t,component,", 0) == 0);
    CHECK(rep.summary().rfind("PASS", 0) == 0);
    // residual CFO draws have the closed-form variance
    for (int k = 0; k < 2; ++k)
        CHECK(std::abs(stats.cfo_sq_err[k].mean() - stats.sigma2_omega[k]) <=
              3 * stats.cfo_sq_err[k].stderr_of_mean());
}

TEST_CASE("zero-CFO mode: SIF variance is M p sum sigma^4") {
    SystemConfig c = small();
    c.p_u = 2.0;
    const auto stats = run_trials(c, 8000, SimMode::zero_cfo, {110, 190}, 8);
    const double expected = 16 * 2.0 * 2 * 0.25;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i) {
            const auto& cell = stats.cell(k, i);
            CHECK(std::abs(cell.sample_variance(Component::sif) - expected) <=
                  3 * cell.variance_stderr(Component::sif));
        }
    CHECK(stats.sigma2_omega == std::vector<double>{0.0, 0.0});
}

TEST_CASE("compare flags a corrupted MUI model") {
    const SystemConfig c = small();
    const auto stats = run_trials(c, 5000, SimMode::analytic, default_probes(c, 4), 9);
    const VarianceModel bad = [](int k, int t, const SystemConfig& cfg, double s2w) {
        auto v = component_variances(k, t, cfg, s2w);
        v.mui *= 1.5;
        return v;
    };
    const auto rep = compare(stats, c, bad);
    int mui_fail = 0;
    for (const auto& v : rep.variances)
        if (v.component == Component::mui && !v.pass) ++mui_fail;
    CHECK(mui_fail == 2 * 4);
    CHECK_FALSE(rep.pass());
}

TEST_CASE("compare rejects empty statistics") {
    TrialStats empty;
    CHECK_THROWS_AS(compare(empty, small()), EmptyStatsError);
}

TEST_CASE("mode names") {
    for (SimMode m : {SimMode::analytic, SimMode::full, SimMode::zero_cfo})
        CHECK(parse_mode(mode_name(m)) == m);
    CHECK_THROWS_AS(parse_mode("bogus"), ConfigError);
}
