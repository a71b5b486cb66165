"""Exact invariants of hypersurface singularities.

Minimal exponents, microlocal V-filtration indices, Brieskorn-Pham spectra,
Jacobian-ideal checks, principal-chart blow-ups and the example families they
are verified on.
"""

__version__ = "0.1.0"

from .algebra import (
    Poly,
    Substitution,
    evaluate,
    factor_out_power,
    graded_parts,
    lowest_degree_part,
    parse_polynomial,
    partial_derivative,
    substitute,
)
from .errors import SingulexError
from .exponents import INFINITY, BrieskornPham, ExponentValue

__all__ = [
    "INFINITY",
    "BrieskornPham",
    "ExponentValue",
    "Poly",
    "SingulexError",
    "Substitution",
    "evaluate",
    "factor_out_power",
    "graded_parts",
    "lowest_degree_part",
    "parse_polynomial",
    "partial_derivative",
    "substitute",
]
