"""Exact Zariski decompositions on algebraic surfaces and integrality checks
for their denominators."""

__version__ = "0.1.0"

from .errors import (
    DegenerateCone,
    InputError,
    NotPseudoEffectiveData,
    OracleViolation,
    PreconditionError,
    ResourceError,
    ZariskiKitError,
)
from .lattice import (
    CurveClass,
    CurveSystem,
    Divisor,
    IntersectionLattice,
    det,
    is_negative_definite,
    is_negative_semidefinite,
    pair,
    signature,
    validate_lattice,
)
from .zariski import ZariskiDecomposition, brute_force_decompose, check_decomposition, zariski_decompose

__all__ = [
    "CurveClass",
    "CurveSystem",
    "DegenerateCone",
    "Divisor",
    "InputError",
    "IntersectionLattice",
    "NotPseudoEffectiveData",
    "OracleViolation",
    "PreconditionError",
    "ResourceError",
    "ZariskiDecomposition",
    "ZariskiKitError",
    "brute_force_decompose",
    "check_decomposition",
    "det",
    "is_negative_definite",
    "is_negative_semidefinite",
    "pair",
    "signature",
    "validate_lattice",
    "zariski_decompose",
]
