"""Metric operators for the non-Hermitian Swanson oscillator in a truncated Fock basis."""
from .closed_forms import (
    DEMO_PARAMS,
    Branch,
    ClassicalQuantities,
    MetricChoice,
    MetricScalars,
    OscillatorParams,
    SingularBand,
    classical,
    fock_representable,
    is_valid,
    metric_scalars,
    mu_nu,
    singular_band,
)
from .errors import (
    DimensionError,
    ExceptionalPointError,
    HermitianCaseError,
    InvalidParametersError,
    InvalidRegionError,
    MatrixOverflowError,
    NoConvergenceError,
    NonPositiveFrequencyError,
    NotHermitianError,
    SwansonError,
)
from .operators import OperatorSet, build_operator_set
from .verification import (
    TransitionTable,
    VerificationReport,
    exceptional_point_scan,
    probe_band_edges,
    run_suite,
    transition_elements,
)

__all__ = [
    "DEMO_PARAMS", "Branch", "ClassicalQuantities", "MetricChoice", "MetricScalars",
    "OscillatorParams", "SingularBand", "classical", "fock_representable", "is_valid",
    "metric_scalars", "mu_nu", "singular_band",
    "DimensionError", "ExceptionalPointError", "HermitianCaseError", "InvalidParametersError",
    "InvalidRegionError", "MatrixOverflowError", "NoConvergenceError", "NonPositiveFrequencyError",
    "NotHermitianError", "SwansonError",
    "OperatorSet", "build_operator_set",
    "TransitionTable", "VerificationReport", "exceptional_point_scan", "probe_band_edges",
    "run_suite", "transition_elements",
]
