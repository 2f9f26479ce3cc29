// Command-line front end: runs one named experiment and writes CSV with
// '#'-prefixed metadata lines. Exit codes: 0 pass, 1 usage/config error,
// 2 result outside its acceptance tolerance.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfomimo/config_file.hpp"
#include "cfomimo/errors.hpp"
#include "cfomimo/experiments.hpp"

using namespace cfomimo;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<int> int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& v : split_list(s)) out.push_back(std::stoi(v));
    return out;
}

std::vector<double> double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& v : split_list(s)) out.push_back(std::stod(v));
    return out;
}

// Experiment parameters arrive as config extras; every one must be consumed.
class Extras {
public:
    explicit Extras(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    std::optional<std::string> take(const std::string& key) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        std::string v = it->second;
        kv_.erase(it);
        applied_.emplace_back(key + "=" + v);
        return v;
    }
    void ensure_consumed() const {
        if (!kv_.empty()) throw ConfigError("unknown key '" + kv_.begin()->first + "'");
    }
    const std::vector<std::string>& applied() const { return applied_; }

private:
    std::map<std::string, std::string> kv_;
    std::vector<std::string> applied_;
};

void take_search(Extras& ex, SnrSearch& s) {
    if (auto v = ex.take("snr_lo_db")) s.lo_db = std::stod(*v);
    if (auto v = ex.take("snr_hi_db")) s.hi_db = std::stod(*v);
    if (auto v = ex.take("resolution_db")) s.resolution_db = std::stod(*v);
}

int user_index(const std::string& v) {
    const int k = std::stoi(v);
    if (k < 1) throw ConfigError("user is 1-based");
    return k - 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "CFO-impaired single-carrier massive MU-MIMO uplink with a TR-MRC receiver.\n"
        "Experiments: table2, fig2, variance-check, mse-check, gap-asymptotic.\n"
        "All dB values are 10 log10 of power ratios. Powers in config files and --set\n"
        "take a 'dB' or 'lin' suffix (bare numbers are linear)."};
    std::string experiment;
    std::string config_path;
    std::vector<std::string> sets;
    std::uint64_t seed = 1;
    std::string out_path;
    std::int64_t trials = -1;
    std::string mode = "analytic";
    int threads = 0;

    app.add_option("experiment", experiment, "Experiment name")
        ->required()
        ->check(CLI::IsMember(experiment_names()));
    app.add_option("--config", config_path, "Config file (key = value, optional [pdp] table)");
    app.add_option("--set", sets, "Override key=value (repeatable)")->take_all();
    app.add_option("--seed", seed, "Base RNG seed");
    app.add_option("--out", out_path, "Output CSV path (default stdout)");
    app.add_option("--trials", trials, "Monte Carlo trials");
    app.add_option("--mode", mode, "CFO mode: analytic|full|zero_cfo")
        ->check(CLI::IsMember({"analytic", "full", "zero_cfo"}));
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        ConfigBuilder builder;
        // Experiment defaults first, then the file, then --set.
        builder.load_text(to_text(default_config(experiment)), "<defaults>");
        if (!config_path.empty()) builder.load_file(config_path);
        for (const auto& s : sets) builder.set_assignment(s);
        const SystemConfig config = builder.build();
        validate(config);
        Extras extras(builder.extras());

        ExperimentResult result;
        if (experiment == "table2") {
            Table2Params p;
            if (auto v = extras.take("M_list")) p.M_list = int_list(*v);
            if (auto v = extras.take("target_bpcu")) p.target_bpcu = std::stod(*v);
            if (auto v = extras.take("user")) p.user = user_index(*v);
            if (auto v = extras.take("tolerance_db")) p.tolerance_db = std::stod(*v);
            take_search(extras, p.search);
            extras.ensure_consumed();
            result = run_table2(config, p);
        } else if (experiment == "fig2") {
            Fig2Params p;
            if (auto v = extras.take("L_list")) p.L_list = int_list(*v);
            if (auto v = extras.take("rates")) p.rates = double_list(*v);
            if (auto v = extras.take("user")) p.user = user_index(*v);
            take_search(extras, p.search);
            extras.ensure_consumed();
            result = run_fig2(config, p);
        } else if (experiment == "variance-check") {
            VarianceCheckParams p;
            if (trials >= 0) p.trials = trials;
            p.mode = parse_mode(mode);
            p.seed = seed;
            p.threads = threads;
            if (auto v = extras.take("probes")) p.probe_count = std::stoi(*v);
            extras.ensure_consumed();
            result = run_variance_check(config, p);
        } else if (experiment == "mse-check") {
            MseCheckParams p;
            if (trials >= 0) p.trials = trials;
            p.seed = seed;
            p.threads = threads;
            if (auto v = extras.take("M_list")) p.M_list = int_list(*v);
            extras.ensure_consumed();
            result = run_mse_check(config, p);
        } else {
            GapAsymptoticParams p;
            if (auto v = extras.take("M_asym")) p.M = std::stoi(*v);
            if (auto v = extras.take("L_list")) p.L_list = int_list(*v);
            if (auto v = extras.take("rates")) p.rates = double_list(*v);
            if (auto v = extras.take("user")) p.user = user_index(*v);
            if (auto v = extras.take("dominance")) p.dominance = std::stod(*v);
            if (auto v = extras.take("tolerance_db")) p.tolerance_db = std::stod(*v);
            take_search(extras, p.search);
            extras.ensure_consumed();
            result = run_gap_asymptotic(config, p);
        }

        std::ostringstream header;
        header << "# cfomimo " << CFOMIMO_VERSION << "\n# experiment: " << experiment
               << "\n# seed: " << seed << "\n# mode: " << mode << "\n";
        if (trials >= 0) header << "# trials: " << trials << "\n";
        for (const auto& a : extras.applied()) header << "# param: " << a << "\n";
        std::istringstream cfg_lines(to_text(config));
        for (std::string line; std::getline(cfg_lines, line);) header << "# config: " << line << "\n";

        const std::string text =
            header.str() + result.csv + "# summary: " + result.summary + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw ConfigError("cannot write " + out_path);
            out << text;
        }
        std::cerr << header.str() << result.summary << "\n";
        return result.pass ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad numeric value (" << e.what() << ")\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: numeric value out of range (" << e.what() << ")\n";
        return 1;
    }
}
