"""Exact symbolic toolkit linking rank-2 cluster mutation, Chebyshev
polynomials, Jones polynomials of the (2, n) torus links, and finite-level
Bratteli diagram data, with an independent Temperley-Lieb bracket oracle."""

from .laurent import (
    ArityMismatchError,
    LaurentPoly,
    NotDivisibleError,
    RationalLaurent,
    format_poly,
    from_json,
    from_json_obj,
    parse_poly,
    to_json,
    to_json_obj,
)

__all__ = [
    "ArityMismatchError",
    "LaurentPoly",
    "NotDivisibleError",
    "RationalLaurent",
    "format_poly",
    "from_json",
    "from_json_obj",
    "parse_poly",
    "to_json",
    "to_json_obj",
]

__version__ = "0.1.0"
