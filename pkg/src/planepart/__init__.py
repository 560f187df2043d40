"""Uniform random generation of plane partitions by size.

Free Boltzmann samplers over multiset diagrams are composed with a
size-preserving bijection onto plane partitions; rejection on the realised
size then yields exact-size and window-size uniform samplers for the
unconstrained, boxed and staircase (skew) classes. Exact big-integer count
tables and brute-force enumerators provide independent ground truth.
"""

from .core import (
    Diagram,
    IndexDomain,
    PlanePartition,
    SkewFilling,
    TargetSpec,
    diagram_size,
    hook_length,
    max_hook_length,
    validate_plane_partition,
)
from .dist import (
    MaxIndexSampler,
    RandomSource,
    geometric,
    max_index,
    poisson,
    poisson_positive,
    uniform01,
)
from .oracle import (
    CountTable,
    OracleConfig,
    ZETA3,
    atom_gf,
    boxed_counts,
    domain_mean_size,
    exact_counts,
    expected_size,
    log_multiset_gf,
    multiset_gf,
    peak_rate_constant,
    skew_counts,
    solve_target_equation,
    sweep_cost,
    sweep_cost_closed,
    tune_boxed,
    tune_unconstrained,
    variance_size,
    window_rate_constant,
)
from .pak import (
    TransformStats,
    pak_forward,
    pak_forward_skew,
    pak_inverse,
    transform_cost,
    transform_cost_skew,
)
from .sampler import (
    BoxedDiagramSampler,
    FreeDiagramSampler,
    MaxAttemptsExceeded,
    SampleReport,
    SkewDiagramSampler,
    boltzmann_diagram,
    boltzmann_diagram_boxed,
    boltzmann_diagram_skew,
    sample_partitions,
    sample_partitions_boxed,
    sample_partitions_skew,
    sample_targeted,
)

__version__ = "0.1.0"

__all__ = [
    "Diagram",
    "PlanePartition",
    "IndexDomain",
    "SkewFilling",
    "TargetSpec",
    "diagram_size",
    "max_hook_length",
    "validate_plane_partition",
    "hook_length",
    "RandomSource",
    "uniform01",
    "geometric",
    "poisson",
    "poisson_positive",
    "max_index",
    "MaxIndexSampler",
    "OracleConfig",
    "CountTable",
    "ZETA3",
    "atom_gf",
    "log_multiset_gf",
    "multiset_gf",
    "expected_size",
    "variance_size",
    "tune_unconstrained",
    "tune_boxed",
    "domain_mean_size",
    "solve_target_equation",
    "exact_counts",
    "boxed_counts",
    "skew_counts",
    "peak_rate_constant",
    "window_rate_constant",
    "sweep_cost",
    "sweep_cost_closed",
    "TransformStats",
    "pak_forward",
    "pak_inverse",
    "pak_forward_skew",
    "transform_cost",
    "transform_cost_skew",
    "FreeDiagramSampler",
    "BoxedDiagramSampler",
    "SkewDiagramSampler",
    "boltzmann_diagram",
    "boltzmann_diagram_boxed",
    "boltzmann_diagram_skew",
    "SampleReport",
    "MaxAttemptsExceeded",
    "sample_targeted",
    "sample_partitions",
    "sample_partitions_boxed",
    "sample_partitions_skew",
]
