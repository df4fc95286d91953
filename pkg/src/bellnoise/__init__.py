"""Noise estimation on one qubit of an entangled pair.

A simulator for the mixed-conjugation (Pauli) noise channel acting on half
of a Bell pair, with two estimators of the noise weights: the optimal
Bell-measurement protocol and an entangled-pair process-tomography
baseline, plus a Monte Carlo harness that checks variance bounds and
quantifies the efficiency gap between the two.
"""

from ._version import __version__
from .channel import (
    PauliProbabilities,
    TimingConfig,
    apply_channel_one_side,
    apply_pauli_channel,
    chi_of_pauli,
    depolarizing_chi,
    depolarizing_probs,
    timing_to_probs,
)
from .estimation import (
    DcEstimate,
    PauliEstimate,
    dc_std_bound,
    empirical_covariance,
    estimate_dc,
    estimate_pauli,
    min_covariance,
)
from .harness import (
    ExperimentConfig,
    MonteCarloReport,
    ReportRow,
    bell_probs_report,
    emit_bell_probs,
    emit_report,
    run_comparison,
    run_montecarlo,
)
from .measurement import (
    SamplingConfig,
    bell_outcome_probs,
    bell_permutation,
    derive_seed,
    sample_counts,
    two_outcome_probs,
)
from .qcore import (
    BellLabel,
    bell_projector,
    bell_state,
    psd_project,
    tensor_product,
    uhlmann_fidelity,
)
from .tomography import (
    AaqptResult,
    TomographyCounts,
    TomographySettings,
    aaqpt_pipeline,
    chi_from_output,
    fit_p_fidelity,
    linear_inversion_state,
    simulate_qst_counts,
)

__all__ = [
    "__version__",
    "AaqptResult",
    "BellLabel",
    "DcEstimate",
    "ExperimentConfig",
    "MonteCarloReport",
    "PauliEstimate",
    "PauliProbabilities",
    "ReportRow",
    "SamplingConfig",
    "TimingConfig",
    "TomographyCounts",
    "TomographySettings",
    "aaqpt_pipeline",
    "apply_channel_one_side",
    "apply_pauli_channel",
    "bell_outcome_probs",
    "bell_permutation",
    "bell_probs_report",
    "bell_projector",
    "bell_state",
    "chi_from_output",
    "chi_of_pauli",
    "dc_std_bound",
    "depolarizing_chi",
    "depolarizing_probs",
    "derive_seed",
    "emit_bell_probs",
    "emit_report",
    "empirical_covariance",
    "estimate_dc",
    "estimate_pauli",
    "fit_p_fidelity",
    "linear_inversion_state",
    "min_covariance",
    "psd_project",
    "run_comparison",
    "run_montecarlo",
    "sample_counts",
    "simulate_qst_counts",
    "tensor_product",
    "timing_to_probs",
    "two_outcome_probs",
    "uhlmann_fidelity",
]
