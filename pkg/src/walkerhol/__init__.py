"""Exact holonomy and curvature computations for Lorentzian Walker metrics."""

from .errors import WalkerholError
from .exact import RationalFunction, parse_expr, walker_vars
from .holonomy import (
    HolonomySpan,
    Thm18Input,
    build_metric_thm18,
    classify_span,
    holonomy_span,
    verify_realization,
)
from .walker import WalkerMetric

__version__ = "0.1.0"

__all__ = [
    "HolonomySpan",
    "RationalFunction",
    "Thm18Input",
    "WalkerMetric",
    "WalkerholError",
    "build_metric_thm18",
    "classify_span",
    "holonomy_span",
    "parse_expr",
    "verify_realization",
    "walker_vars",
]
