"""Perfect sampling for binary processes with linear infinite-memory kernels.

The package classifies coefficient sequences for uniqueness of the
compatible process, draws exact samples of the unique process with a
coalescing signed-particle algorithm, and cross-checks everything against
an exact finite-memory Markov oracle.
"""

from .coefficients import (
    BiasedModel,
    ClassificationVerdict,
    CoherentConfiguration,
    FiniteVector,
    Geometric,
    PowerLaw,
    SignPattern,
    classify,
    coherent_configurations,
    validate,
)
from .engine import (
    ALL_MINUS,
    ALL_PLUS,
    BoundarySpec,
    SampleWindow,
    boundary_simulate,
    perfect_simulate,
    perfect_simulate_biased,
    resolve_signs,
)
from .kernel import PastWindow, ProbInterval, kernel_prob, sample_lag, sample_next
from .oracle import build_oracle, exact_boundary_law, exact_window_law, stationary_distributions
from .rngstream import replica_rng
from .walks import coalesce_window, hitting_time, von_schelling_step

__all__ = [
    "ALL_MINUS",
    "ALL_PLUS",
    "BiasedModel",
    "BoundarySpec",
    "ClassificationVerdict",
    "CoherentConfiguration",
    "FiniteVector",
    "Geometric",
    "PastWindow",
    "PowerLaw",
    "ProbInterval",
    "SampleWindow",
    "SignPattern",
    "boundary_simulate",
    "build_oracle",
    "classify",
    "coalesce_window",
    "coherent_configurations",
    "exact_boundary_law",
    "exact_window_law",
    "hitting_time",
    "kernel_prob",
    "perfect_simulate",
    "perfect_simulate_biased",
    "replica_rng",
    "resolve_signs",
    "sample_lag",
    "sample_next",
    "stationary_distributions",
    "validate",
    "von_schelling_step",
]

__version__ = "0.1.0"
