"""Dimensions of P(h) for irreducible Riemannian holonomy algebras.

``CLAIMED_DIMENSIONS`` holds the published values (total, P0, P1) together with the
catalog name used to rebuild each algebra.  ``dimension_row`` recomputes a row.
"""

from dataclasses import dataclass

from ..liealg.catalog import parse_algebra
from .spaces import pspace, split_p0_p1, weak_berger


@dataclass(frozen=True)
class DimensionClaim:
    label: str
    algebra: str
    dim_P: int
    dim_P0: int
    dim_P1: int


CLAIMED_DIMENSIONS = (
    DimensionClaim("so(2)", "so:2", 2, 0, 2),
    DimensionClaim("so(3)", "so:3", 8, 5, 3),
    DimensionClaim("so(4)", "so:4", 20, 16, 4),
    DimensionClaim("so(5)", "so:5", 40, 35, 5),
    DimensionClaim("u(2)", "u:2", 8, 4, 4),
    DimensionClaim("su(2)", "su:2", 4, 4, 0),
    DimensionClaim("sp(2)", "sp:2", 8, 8, 0),
    DimensionClaim("sp(2)+sp(1)", "spsp1:2", 16, 8, 8),
    DimensionClaim("G2", "g2", 64, 64, 0),
    DimensionClaim("spin(7)", "spin7", 112, 112, 0),
)


@dataclass
class DimensionRow:
    claim: DimensionClaim
    n: int
    dim_P: int
    dim_P0: int
    dim_P1: int
    weak_berger: bool

    @property
    def matches(self):
        c = self.claim
        return (self.dim_P, self.dim_P0, self.dim_P1) == (c.dim_P, c.dim_P0, c.dim_P1)


def dimension_row(claim):
    h = parse_algebra(claim.algebra)
    ps = pspace(h)
    p0, p1 = split_p0_p1(ps)
    _, ok = weak_berger(h, ps)
    return DimensionRow(claim, h.n, ps.dim, p0.dim, p1.dim, ok)


def dimension_report(labels=None):
    rows = [c for c in CLAIMED_DIMENSIONS if labels is None or c.label in labels]
    return [dimension_row(c) for c in rows]
