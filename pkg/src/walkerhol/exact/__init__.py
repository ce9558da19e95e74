"""Exact arithmetic: rationals, sparse polynomials, rational functions."""

from .expr import format_expr, format_polynomial, parse_expr, parse_polynomial
from .poly import Polynomial, rat, walker_vars
from .ratfunc import (
    RationalFunction,
    as_rf,
    differentiate,
    evaluate,
    gcd_threshold,
    gcd_threshold_set,
    poly_gcd_cofactors,
    set_gcd_threshold,
)

__all__ = [
    "Polynomial",
    "RationalFunction",
    "as_rf",
    "differentiate",
    "evaluate",
    "format_expr",
    "format_polynomial",
    "gcd_threshold",
    "gcd_threshold_set",
    "parse_expr",
    "parse_polynomial",
    "poly_gcd_cofactors",
    "rat",
    "set_gcd_threshold",
    "walker_vars",
]
