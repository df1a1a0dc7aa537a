"""Three-qubit Mermin inequality toolkit.

Numeric core lives in the compiled ``_mermin`` extension; this package
re-exports it unchanged.
"""

from ._mermin import (
    BoundSet,
    CorrelationEntry,
    CorrelationRecord,
    MeasurementSettings,
    Observable,
    Verdict,
    __version__,
    basis_state,
    bell_value,
    classify,
    correlation_vectors,
    estimate_m3,
    ghz,
    load_correlations,
    maximize,
    mermin_matrix,
    noisy_ghz,
    partitions,
    random_state,
    sample_class_state,
    save_correlations,
    sharp_biseparable,
    sigma_matrix,
    simulate,
)

__all__ = [
    "BoundSet",
    "CorrelationEntry",
    "CorrelationRecord",
    "MeasurementSettings",
    "Observable",
    "Verdict",
    "__version__",
    "basis_state",
    "bell_value",
    "classify",
    "correlation_vectors",
    "estimate_m3",
    "ghz",
    "load_correlations",
    "maximize",
    "mermin_matrix",
    "noisy_ghz",
    "partitions",
    "random_state",
    "sample_class_state",
    "save_correlations",
    "sharp_biseparable",
    "sigma_matrix",
    "simulate",
]
