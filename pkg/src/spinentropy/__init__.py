"""Entropic inequalities for squared SU(2) d-matrix elements.

Squared Wigner d-matrix elements along a row or column form a probability
vector. Reshaped into a 2xK joint table, they obey Shannon subadditivity,
which turns into inequalities for Jacobi and associated Legendre
polynomials.
"""
from .bipartite import (
    BipartiteTable,
    Marginals,
    ProbVector,
    column_vector,
    marginals,
    permute,
    row_vector,
    to_bipartite,
)
from .entropy import (
    EntropyTriple,
    InfoReport,
    entropy_triple,
    inequality_residual,
    information,
    information_tl,
    shannon,
)
from .errors import (
    ConfigError,
    DomainError,
    PathDisagreement,
    PermutationError,
    ProbabilityError,
    ProjectionError,
    SpinEntropyError,
    SubadditivityViolation,
)
from .harness import SweepConfig, SweepRecord, emit, run_sweep, verify_campaign
from .special_functions import (
    JacobiParams,
    LegendreParams,
    assoc_legendre,
    jacobi_recurrence,
    jacobi_sum,
    log_factorial,
)
from .wigner import (
    DMatrix,
    HalfInt,
    check_symmetries,
    d_matrix,
    d_squared_factored,
    d_squared_sum,
    legendre_specialization,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteTable",
    "ConfigError",
    "DMatrix",
    "DomainError",
    "EntropyTriple",
    "HalfInt",
    "InfoReport",
    "JacobiParams",
    "LegendreParams",
    "Marginals",
    "PathDisagreement",
    "PermutationError",
    "ProbVector",
    "ProbabilityError",
    "ProjectionError",
    "SpinEntropyError",
    "SubadditivityViolation",
    "SweepConfig",
    "SweepRecord",
    "assoc_legendre",
    "check_symmetries",
    "column_vector",
    "d_matrix",
    "d_squared_factored",
    "d_squared_sum",
    "emit",
    "entropy_triple",
    "inequality_residual",
    "information",
    "information_tl",
    "jacobi_recurrence",
    "jacobi_sum",
    "legendre_specialization",
    "log_factorial",
    "marginals",
    "permute",
    "row_vector",
    "run_sweep",
    "shannon",
    "to_bipartite",
    "verify_campaign",
]
