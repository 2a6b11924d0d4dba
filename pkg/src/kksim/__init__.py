"""Monte Carlo simulator for the quantum noise of Kramers-Kronig reception.

The package synthesizes minimum-phase optical frames, applies shot-noise
statistics to the detected photocurrent, retrieves the complex field
through the discretized phase reconstruction, and compares the noise of
the retrieved constellation against closed-form predictions and against
the balanced heterodyne baseline.
"""

__version__ = "0.1.0"

from .analysis import (
    COHERENT_QUADRATURE_VARIANCE,
    ClusterStats,
    ConstellationCloud,
    DegenerateEllipseError,
    InfiniteSnrError,
    InsufficientDataError,
    NoiseEllipse,
    PredictedVariances,
    RADIAL_VARIANCE,
    SNR_SLOPE,
    TANGENTIAL_VARIANCE,
    TOTAL_VARIANCE,
    VARIANCE_RATIO,
    basel_sum_check,
    directional_variances,
    estimate_cluster_stats,
    estimate_snr,
    pca_ellipse,
    predict_iq_variances,
    predict_phase_variance,
    predict_snr,
)
from .experiments import (
    Check,
    ConfigError,
    DEFAULT_SEED,
    ExperimentConfig,
    ExperimentReport,
    RunResult,
    RunSpec,
    build_config,
    emit_outputs,
    parse_config_file,
    run_cspr_sweep,
    run_decision_phase_sweep,
    run_experiment,
    run_single,
    run_table1,
)
from .heterodyne import (
    HeterodyneParams,
    balanced_current_variance,
    balanced_mean_current,
    balanced_snr,
)
from .kk_receiver import (
    PhaseEstimate,
    RetrievedSymbol,
    hilbert_phase,
    retrieve_field,
    simulate_symbol,
    window_half_width,
)
from .quantum_noise import (
    NoiseLaw,
    PhotocurrentTrace,
    clamp_nonpositive,
    commutator_strength,
    expected_current,
    noise_stream,
    sample_noisy_current,
    variance_law,
)
from .signal_model import (
    EnvelopeFrame,
    MinimumPhaseReport,
    ModulationSymbol,
    SamplingGrid,
    SignalParams,
    check_minimum_phase,
    map_qpsk,
    synthesize_mp_envelope,
)

__all__ = [
    "__version__",
    "COHERENT_QUADRATURE_VARIANCE",
    "Check",
    "ClusterStats",
    "ConfigError",
    "ConstellationCloud",
    "DEFAULT_SEED",
    "DegenerateEllipseError",
    "EnvelopeFrame",
    "ExperimentConfig",
    "ExperimentReport",
    "HeterodyneParams",
    "InfiniteSnrError",
    "InsufficientDataError",
    "MinimumPhaseReport",
    "ModulationSymbol",
    "NoiseEllipse",
    "NoiseLaw",
    "PhaseEstimate",
    "PhotocurrentTrace",
    "PredictedVariances",
    "RADIAL_VARIANCE",
    "RetrievedSymbol",
    "RunResult",
    "RunSpec",
    "SNR_SLOPE",
    "SamplingGrid",
    "SignalParams",
    "TANGENTIAL_VARIANCE",
    "TOTAL_VARIANCE",
    "VARIANCE_RATIO",
    "balanced_current_variance",
    "balanced_mean_current",
    "balanced_snr",
    "basel_sum_check",
    "build_config",
    "check_minimum_phase",
    "clamp_nonpositive",
    "commutator_strength",
    "directional_variances",
    "emit_outputs",
    "estimate_cluster_stats",
    "estimate_snr",
    "expected_current",
    "hilbert_phase",
    "map_qpsk",
    "noise_stream",
    "parse_config_file",
    "pca_ellipse",
    "predict_iq_variances",
    "predict_phase_variance",
    "predict_snr",
    "retrieve_field",
    "run_cspr_sweep",
    "run_decision_phase_sweep",
    "run_experiment",
    "run_single",
    "run_table1",
    "sample_noisy_current",
    "simulate_symbol",
    "synthesize_mp_envelope",
    "variance_law",
    "window_half_width",
]
