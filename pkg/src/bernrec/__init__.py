"""Exact Bernoulli numbers from a shortened, zeta-derived recurrence."""
from .engines import (
    BernoulliTable,
    EngineKind,
    InsufficientTableError,
    OpCounts,
    bernoulli_classical,
    bernoulli_shortened,
    extend_table,
    shared_coefficients,
)
from .kernel import coeff_a, coeff_b, factorial, normalize
from .zeta import ZetaCoefficient, euler_coefficient, hasse_zeta, kuo_rhs, zeta_direct

__version__ = "0.1.0"

__all__ = [
    "BernoulliTable",
    "EngineKind",
    "InsufficientTableError",
    "OpCounts",
    "ZetaCoefficient",
    "bernoulli_classical",
    "bernoulli_shortened",
    "coeff_a",
    "coeff_b",
    "euler_coefficient",
    "extend_table",
    "factorial",
    "hasse_zeta",
    "kuo_rhs",
    "normalize",
    "shared_coefficients",
    "zeta_direct",
]
