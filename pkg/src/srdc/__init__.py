"""Sextic residue double circulant self-dual codes over GF(2) and GF(4)."""

__version__ = "0.1.0"

from .circulant import CoefficientVector, GFMatrix
from .codes import CodeReport, LinearCode, distance_bound, is_self_dual
from .cyclotomy import PrimeParams, build_table, prime_params

__all__ = [
    "CoefficientVector",
    "CodeReport",
    "GFMatrix",
    "LinearCode",
    "PrimeParams",
    "build_table",
    "distance_bound",
    "is_self_dual",
    "prime_params",
    "__version__",
]
