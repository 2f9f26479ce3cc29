import math

import pytest

import cfomimo


def test_timeline():
    cfg = cfomimo.SystemConfig(M=160, K=10, L=10, N=2000, N_u=2000)
    assert cfomimo.validate(cfg) == {
        "B": 20,
        "full_blocks": 20,
        "data_start": 109,
        "data_end": 1990,
        "N_D": 1882,
    }


def test_validation_errors():
    with pytest.raises(cfomimo.TimelineError):
        cfomimo.validate(cfomimo.SystemConfig(L=150))
    cfg = cfomimo.SystemConfig(M=16, K=2, L=2, N=160, N_u=200)
    cfg.pdp = [[0.5, 0.5, 0.1], [1.0, 1.0, 1.0]]
    with pytest.raises(cfomimo.DimensionError):
        cfomimo.validate(cfg)


def test_config_text_round_trip():
    cfg = cfomimo.config_from_text("M = 64\nK = 2\nL = 3\np_u = -3 dB\n")
    assert cfg.M == 64
    assert cfg.pdp == cfomimo.uniform_pdp(2, 3)
    assert math.isclose(cfg.p_u, 10 ** -0.3)
    again = cfomimo.config_from_text(cfomimo.config_to_text(cfg))
    assert cfomimo.config_to_text(again) == cfomimo.config_to_text(cfg)
    with pytest.raises(cfomimo.ConfigError):
        cfomimo.config_from_text("M = lots\n")


def test_closed_forms():
    gamma = 10 ** (-1.45049)
    assert math.isclose(cfomimo.mse_cfo(gamma, 160, 2000, 10, 10), 1.3582621166278394e-8, rel_tol=1e-12)
    assert math.isclose(cfomimo.alpha(1, 10, 2000, 10, 1), 2.51256281407035e-4, rel_tol=1e-12)
    assert math.isclose(cfomimo.asymptotic_gap_db(1.0), 5 * math.log10(2))

    cfg = cfomimo.SystemConfig(p_u=10 ** -1.45)
    s2w = cfomimo.mse_cfo(cfg.gamma(1), cfg.M, cfg.N, cfg.K, cfg.L)
    v = cfomimo.component_variances(1, 109, cfg, s2w)
    ratio = v["es"] / (v["sif"] + v["isi"] + v["mui"] + v["en"])
    closed = cfomimo.sinr(1, 109, cfg.L, cfg.gamma(1), s2w, cfg.M, cfg.K, 2.0, 10.0)
    assert math.isclose(closed, ratio, rel_tol=1e-10)


def test_rate_solver():
    cfg = cfomimo.SystemConfig(M=160)
    g = cfomimo.min_snr_for_rate(1, 1.0, cfg)
    assert abs(g - (-14.411415215581656)) < 2e-3
    cfg.p_u = 10 ** (g / 10)
    assert cfomimo.rate(1, cfg)["rate"] >= 1.0
    with pytest.raises(cfomimo.UnachievableError):
        cfomimo.min_snr_for_rate(1, 10.0, cfg)
    gap = cfomimo.snr_gap_db(1, 2.0, cfg)
    assert gap["gap_db"] > 0


def test_experiment_and_variance_check():
    csv, summary, _ = cfomimo.run_experiment("table2")
    assert csv.startswith("M,gamma_dB,ref_gamma_dB,delta\n")
    assert summary
    cfg = cfomimo.SystemConfig(M=16, K=2, L=2, N=160, N_u=200)
    rep = cfomimo.variance_check(cfg, trials=500, probes=2)
    assert rep["max_reconstruction_error"] < 1e-9
    assert rep["csv"].startswith("k,t,component,")
