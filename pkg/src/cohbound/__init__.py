"""Coherence-index sparsity bounds for compressive-sensing matrices."""
from .coherence import (
    BoundReport,
    BoundValue,
    CoherenceProfile,
    bound_alpha,
    bound_improved,
    bound_report,
    bound_standard,
    bounds_from_gram,
    build_profile,
    coherence_index,
)
from .ensembles import EnsembleSpec, GraphSpec, generate
from .linalg import column_normalize, gram
from .recovery import RecoveryResult, SparseSignal, exhaustive_l0_oracle, omp_reconstruct
from .twobases import cross_profile, eta, l0_bound_two_bases

__version__ = "0.1.0"
