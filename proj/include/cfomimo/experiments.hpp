#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cfomimo/analytic.hpp"
#include "cfomimo/config.hpp"
#include "cfomimo/montecarlo.hpp"

namespace cfomimo {

/// Output of one named experiment. `csv` is the body only (header row plus
/// data); callers prepend `#` metadata lines.
struct ExperimentResult {
    std::string csv;
    std::string summary;
    bool pass = true;
};

const std::vector<std::string>& experiment_names();

/// Base configuration an experiment starts from before file/--set overrides.
SystemConfig default_config(const std::string& experiment);

// Minimum gamma for a fixed frame rate as M grows.
struct Table2Params {
    std::vector<int> M_list{40, 80, 160, 320, 640};
    double target_bpcu = 1.0;
    int user = 0;
    double tolerance_db = 0.01;
    SnrSearch search{};
};
/// Published reference values, keyed by M (K=10, L=10, N=N_u=2000, 1 bpcu).
const std::map<int, double>& table2_reference();
ExperimentResult run_table2(const SystemConfig& base, const Table2Params& params);

// SNR gap between residual and zero CFO as a function of rate and L.
struct Fig2Params {
    std::vector<int> L_list{1, 3, 5, 10, 20};
    std::vector<double> rates{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    int user = 0;
    SnrSearch search{};
};
struct Fig2Point {
    int L = 0;
    double rate = 0;
    bool achievable = false;
    double gap_db = 0;
};
std::vector<Fig2Point> fig2_points(const SystemConfig& base, const Fig2Params& params);
/// True when every rate has a gap for every L and the gaps fall strictly as L grows.
bool fig2_monotone(const std::vector<Fig2Point>& points, const Fig2Params& params,
                   std::string* detail = nullptr);
ExperimentResult run_fig2(const SystemConfig& base, const Fig2Params& params);

struct VarianceCheckParams {
    std::int64_t trials = 100000;
    SimMode mode = SimMode::analytic;
    int probe_count = 8;
    std::uint64_t seed = 1;
    int threads = 0;
};
ExperimentResult run_variance_check(const SystemConfig& base, const VarianceCheckParams& params,
                                    ComparisonReport* report = nullptr);

struct MseCheckParams {
    std::vector<int> M_list{16, 64, 256};
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
};
struct MsePoint {
    int M = 0;
    double sample_mse = 0, predicted_mse = 0, ratio = 0, ratio_stderr = 0;
};
std::vector<MsePoint> mse_points(const SystemConfig& base, const MseCheckParams& params);
ExperimentResult run_mse_check(const SystemConfig& base, const MseCheckParams& params);

struct GapAsymptoticParams {
    int M = 10000;
    std::vector<int> L_list{1, 3, 5, 10, 20};
    std::vector<double> rates{2.0, 3.0, 4.0};
    int user = 0;
    double dominance = 10.0;   // R counts as >> R0 when R >= dominance * R0
    double tolerance_db = 0.1;
    SnrSearch search{-60.0, 60.0, 1e-5, 20};
};
struct GapAsymptoticRow {
    int L = 0, t = 0;
    double rate = 0, alpha = 0, r0 = 0;
    double finite_gap_db = 0, asymptotic_db = 0, exact_limit_db = 0;
    bool eligible = false, pass = true;
};
std::vector<GapAsymptoticRow> gap_asymptotic_rows(const SystemConfig& base,
                                                  const GapAsymptoticParams& params);
ExperimentResult run_gap_asymptotic(const SystemConfig& base, const GapAsymptoticParams& params);

}  // namespace cfomimo
