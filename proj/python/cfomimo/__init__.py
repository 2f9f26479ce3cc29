"""Python bindings for the cfomimo uplink simulator and closed-form rate engine."""

from ._cfomimo import (
    CfoBoundError,
    ConfigError,
    DimensionError,
    DomainError,
    Error,
    SystemConfig,
    TimelineError,
    UnachievableError,
    alpha,
    asymptotic_gap_db,
    component_variances,
    config_from_text,
    config_to_text,
    min_snr_for_rate,
    mse_cfo,
    rate,
    run_experiment,
    sinr,
    snr_gap_db,
    table2_reference,
    uniform_pdp,
    validate,
    variance_check,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
