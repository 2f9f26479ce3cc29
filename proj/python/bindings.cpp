#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfomimo/analytic.hpp"
#include "cfomimo/cfo.hpp"
#include "cfomimo/config.hpp"
#include "cfomimo/config_file.hpp"
#include "cfomimo/errors.hpp"
#include "cfomimo/experiments.hpp"
#include "cfomimo/montecarlo.hpp"

namespace py = pybind11;
using namespace cfomimo;

namespace {

RateMode rate_mode(const std::string& s) {
    if (s == "residual") return RateMode::residual;
    if (s == "zero_cfo") return RateMode::zero_cfo;
    throw ConfigError("mode must be 'residual' or 'zero_cfo'");
}

// User indices are 1-based on the Python side, matching the CLI.
int user0(int k) {
    if (k < 1) throw DomainError("user index is 1-based");
    return k - 1;
}

}  // namespace

PYBIND11_MODULE(_cfomimo, m) {
    m.doc() = "CFO-impaired massive MU-MIMO uplink with TR-MRC: simulator and closed forms";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<TimelineError>(m, "TimelineError", base.ptr());
    py::register_exception<CfoBoundError>(m, "CfoBoundError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<UnachievableError>(m, "UnachievableError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init([](int M, int K, int L, int N, int N_u, double p_u, double sigma2) {
                 SystemConfig c;
                 c.M = M;
                 c.K = K;
                 c.L = L;
                 c.N = N;
                 c.N_u = N_u;
                 c.p_u = p_u;
                 c.sigma2 = sigma2;
                 return with_uniform_pdp(c);
             }),
             py::arg("M") = 160, py::arg("K") = 10, py::arg("L") = 10, py::arg("N") = 2000,
             py::arg("N_u") = 2000, py::arg("p_u") = 1.0, py::arg("sigma2") = 1.0)
        .def_readwrite("M", &SystemConfig::M)
        .def_readwrite("K", &SystemConfig::K)
        .def_readwrite("L", &SystemConfig::L)
        .def_readwrite("N", &SystemConfig::N)
        .def_readwrite("N_u", &SystemConfig::N_u)
        .def_readwrite("p_u", &SystemConfig::p_u)
        .def_readwrite("sigma2", &SystemConfig::sigma2)
        .def_readwrite("kappa_ppm", &SystemConfig::kappa_ppm)
        .def_readwrite("f_c_hz", &SystemConfig::f_c_hz)
        .def_readwrite("bw_hz", &SystemConfig::bw_hz)
        .def_readwrite("allow_large_cfo", &SystemConfig::allow_large_cfo)
        .def_property(
            "pdp",
            [](const SystemConfig& c) {
                std::vector<std::vector<double>> rows;
                for (int k = 0; k < c.pdp.users(); ++k) rows.push_back(c.pdp.row(k));
                return rows;
            },
            [](SystemConfig& c, std::vector<std::vector<double>> rows) {
                c.pdp = PowerDelayProfile(std::move(rows));
            })
        .def("omega_max", &SystemConfig::omega_max)
        .def("gamma", [](const SystemConfig& c, int k) { return c.gamma(user0(k)); }, py::arg("k"))
        .def("__repr__", [](const SystemConfig& c) { return "SystemConfig(\n" + to_text(c) + ")"; });

    m.def(
        "validate",
        [](const SystemConfig& c) {
            const DerivedFrame f = validate(c);
            py::dict d;
            d["B"] = f.B;
            d["full_blocks"] = f.full_blocks;
            d["data_start"] = f.data_start;
            d["data_end"] = f.data_end;
            d["N_D"] = f.N_D;
            return d;
        },
        "Check invariants and return the derived slot timeline.");
    m.def(
        "uniform_pdp",
        [](int K, int L) {
            const auto p = uniform_pdp(K, L);
            std::vector<std::vector<double>> rows;
            for (int k = 0; k < K; ++k) rows.push_back(p.row(k));
            return rows;
        },
        py::arg("K"), py::arg("L"));
    m.def("config_from_text", [](const std::string& text) {
        ConfigBuilder b;
        b.load_text(text);
        return b.build();
    });
    m.def("config_to_text", &to_text);

    m.def("mse_cfo", py::overload_cast<double, int, int, int, int, double>(&mse_cfo),
          py::arg("gamma"), py::arg("M"), py::arg("N"), py::arg("K"), py::arg("L"),
          py::arg("G") = 1.0);
    m.def(
        "component_variances",
        [](int k, int t, const SystemConfig& c, double s2w) {
            const auto v = component_variances(user0(k), t, c, s2w);
            return py::dict(py::arg("es") = v.es, py::arg("sif") = v.sif, py::arg("isi") = v.isi,
                            py::arg("mui") = v.mui, py::arg("en") = v.en);
        },
        py::arg("k"), py::arg("t"), py::arg("config"), py::arg("sigma2_omega"));
    m.def(
        "sinr",
        [](int k, int t, int L, double gamma, double s2w, int M, int K, double c1, double c2) {
            return sinr(user0(k), t, L, gamma, s2w, M, K, c1, c2);
        },
        py::arg("k"), py::arg("t"), py::arg("L"), py::arg("gamma"), py::arg("sigma2_omega"),
        py::arg("M"), py::arg("K"), py::arg("c1"), py::arg("c2"));
    m.def(
        "rate",
        [](int k, const SystemConfig& c, const std::string& mode) {
            const auto p = rate(user0(k), c, rate_mode(mode));
            py::dict d;
            d["t_first"] = p.t_first;
            d["gamma"] = p.gamma;
            d["sigma2_omega"] = p.sigma2_omega;
            d["sinr"] = p.sinr;
            d["rate"] = p.rate;
            return d;
        },
        py::arg("k"), py::arg("config"), py::arg("mode") = "residual");
    m.def(
        "min_snr_for_rate",
        [](int k, double target, const SystemConfig& c, const std::string& mode) {
            return min_snr_for_rate(user0(k), target, c, rate_mode(mode));
        },
        py::arg("k"), py::arg("target_bpcu"), py::arg("config"), py::arg("mode") = "residual");
    m.def(
        "snr_gap_db",
        [](int k, double target, const SystemConfig& c) {
            const auto g = snr_gap_db(user0(k), target, c);
            py::dict d;
            d["gamma_required_db"] = g.gamma_required_db;
            d["gamma0_required_db"] = g.gamma0_required_db;
            d["gap_db"] = g.gap_db;
            d["t_alpha"] = g.t_alpha;
            d["alpha_kt"] = g.alpha_kt;
            d["theta_limit"] = g.theta_limit;
            return d;
        },
        py::arg("k"), py::arg("target_bpcu"), py::arg("config"));
    m.def(
        "alpha",
        [](int k, int t, int N, int K, int L) { return alpha(user0(k), t, N, K, L); },
        py::arg("k"), py::arg("t"), py::arg("N"), py::arg("K"), py::arg("L"));
    m.def("asymptotic_gap_db", &asymptotic_gap_db, py::arg("alpha"));
    m.def("table2_reference", &table2_reference);

    m.def(
        "variance_check",
        [](const SystemConfig& c, std::int64_t trials, const std::string& mode,
           std::uint64_t seed, int probes) {
            VarianceCheckParams p;
            p.trials = trials;
            p.mode = parse_mode(mode);
            p.seed = seed;
            p.probe_count = probes;
            ComparisonReport rep;
            ExperimentResult res;
            {
                py::gil_scoped_release release;
                res = run_variance_check(c, p, &rep);
            }
            py::dict d;
            d["pass"] = res.pass;
            d["summary"] = res.summary;
            d["csv"] = res.csv;
            d["variance_pass_fraction"] = rep.variance_pass_fraction;
            d["max_reconstruction_error"] = rep.max_reconstruction_error;
            return d;
        },
        py::arg("config"), py::arg("trials") = 2000, py::arg("mode") = "analytic",
        py::arg("seed") = 1, py::arg("probes") = 8);

    m.def(
        "run_experiment",
        [](const std::string& name) {
            const SystemConfig c = default_config(name);
            ExperimentResult r;
            if (name == "table2") r = run_table2(c, {});
            else if (name == "fig2") r = run_fig2(c, {});
            else if (name == "gap-asymptotic") r = run_gap_asymptotic(c, {});
            else throw ConfigError("run_experiment supports table2, fig2, gap-asymptotic");
            return py::make_tuple(r.csv, r.summary, r.pass);
        },
        py::arg("name"), "Run an analytic experiment with defaults; returns (csv, summary, pass).");
}
