"""Explicit subalgebras of so(n) used throughout.

Complex and quaternionic algebras act on R^m + R^m (resp. R^2k + R^2k) with
J(x, y) = (-y, x).  For the quaternionic case the second structure is
J2(x, y) = (Omega x, -Omega y) with Omega = [[0, -I], [I, 0]], which is left
multiplication by j on H^k written as C^2k; J3 = J1 J2.
"""

import re
from functools import lru_cache

import numpy as np
from gmpy2 import mpq

from ..errors import InvalidSpec, UnknownAlgebra
from ..linalg import identity, kernel, zeros
from .core import (
    E,
    LieAlgebraBasis,
    bracket,
    center,
    commutant,
    derived_algebra,
    generated_subalgebra,
    span_algebra,
)


def so(n):
    mats = [E(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return LieAlgebraBasis(mats, name=f"so({n})", check=False) if mats else LieAlgebraBasis.zero(n)


def complex_structure(m):
    J = zeros(2 * m, 2 * m)
    for a in range(m):
        J[m + a, a] = mpq(1)
        J[a, m + a] = mpq(-1)
    return J


def quaternionic_structures(k):
    n = 4 * k
    J1 = complex_structure(2 * k)
    omega = zeros(2 * k, 2 * k)
    for a in range(k):
        omega[k + a, a] = mpq(1)
        omega[a, k + a] = mpq(-1)
    J2 = zeros(n, n)
    J2[: 2 * k, : 2 * k] = omega
    J2[2 * k:, 2 * k:] = -omega
    J3 = J1 @ J2
    return J1, J2, J3


def _realify(X, Y):
    """Real 2m x 2m matrix of the complex matrix X + iY."""
    m = X.shape[0]
    out = zeros(2 * m, 2 * m)
    out[:m, :m] = X
    out[:m, m:] = -Y
    out[m:, :m] = Y
    out[m:, m:] = X
    return out


def u(m):
    mats = []
    for a in range(m):
        for b in range(a + 1, m):
            X = zeros(m, m)
            X[a, b], X[b, a] = mpq(1), mpq(-1)
            mats.append(_realify(X, zeros(m, m)))
    for a in range(m):
        for b in range(a, m):
            Y = zeros(m, m)
            Y[a, b] = Y[b, a] = mpq(1)
            mats.append(_realify(zeros(m, m), Y))
    return LieAlgebraBasis(mats, name=f"u({m})", check=False)


def su(m):
    mats = []
    for a in range(m):
        for b in range(a + 1, m):
            X = zeros(m, m)
            X[a, b], X[b, a] = mpq(1), mpq(-1)
            mats.append(_realify(X, zeros(m, m)))
            Y = zeros(m, m)
            Y[a, b] = Y[b, a] = mpq(1)
            mats.append(_realify(zeros(m, m), Y))
    for a in range(m - 1):
        Y = zeros(m, m)
        Y[a, a], Y[a + 1, a + 1] = mpq(1), mpq(-1)
        mats.append(_realify(zeros(m, m), Y))
    if not mats:
        return LieAlgebraBasis.zero(2 * m)
    return LieAlgebraBasis(mats, name=f"su({m})", check=False)


@lru_cache(maxsize=None)
def sp(k):
    h = commutant(so(4 * k), quaternionic_structures(k), name=f"sp({k})")
    return h


def sp1(k):
    return LieAlgebraBasis(list(quaternionic_structures(k)), name="sp(1)", check=False)


def spsp1(k):
    return span_algebra(sp(k).matrices + sp1(k).matrices, name=f"sp({k})+sp(1)", check=False)


def _combo(n, terms):
    m = zeros(n, n)
    for sign, i, j in terms:
        m = m + E(n, i, j) * sign
    return m


G2_GENERATORS = {
    1: [(1, 1, 2), (-1, 3, 4)],
    2: [(1, 1, 2), (-1, 5, 6)],
    3: [(1, 1, 3), (1, 2, 4)],
    4: [(1, 1, 3), (-1, 6, 7)],
    5: [(1, 1, 4), (-1, 2, 3)],
    6: [(1, 1, 4), (-1, 5, 7)],
    7: [(1, 1, 5), (1, 2, 6)],
    8: [(1, 1, 5), (1, 4, 7)],
    9: [(1, 1, 6), (-1, 2, 5)],
    10: [(1, 1, 6), (1, 3, 7)],
    11: [(1, 1, 7), (-1, 3, 6)],
    12: [(1, 1, 7), (-1, 4, 5)],
    13: [(1, 2, 7), (-1, 3, 5)],
    14: [(1, 2, 7), (1, 4, 6)],
}

SPIN7_GENERATORS = {
    1: [(1, 1, 2), (1, 3, 4)],
    2: [(1, 1, 3), (-1, 2, 4)],
    3: [(1, 1, 4), (1, 2, 3)],
    4: [(1, 5, 6), (1, 7, 8)],
    5: [(-1, 5, 7), (1, 6, 8)],
    6: [(1, 5, 8), (1, 6, 7)],
    7: [(-1, 1, 5), (1, 2, 6)],
    8: [(1, 1, 2), (1, 5, 6)],
    9: [(1, 1, 6), (1, 2, 5)],
    10: [(1, 3, 7), (-1, 4, 8)],
    11: [(1, 3, 8), (1, 4, 7)],
    12: [(1, 1, 7), (1, 2, 8)],
    13: [(1, 1, 8), (-1, 2, 7)],
    14: [(1, 3, 5), (1, 4, 6)],
    15: [(1, 3, 6), (-1, 4, 5)],
    16: [(1, 1, 8), (1, 3, 6)],
    17: [(1, 1, 7), (1, 3, 5)],
    18: [(1, 2, 6), (-1, 4, 8)],
    19: [(1, 2, 5), (1, 3, 8)],
    20: [(1, 2, 3), (1, 6, 7)],
    21: [(1, 2, 4), (1, 5, 7)],
}


def g2_generator(i):
    return _combo(7, G2_GENERATORS[i])


def spin7_generator(i):
    return _combo(8, SPIN7_GENERATORS[i])


@lru_cache(maxsize=None)
def g2():
    return generated_subalgebra([g2_generator(i) for i in range(1, 15)], name="g2")


@lru_cache(maxsize=None)
def spin7():
    return generated_subalgebra([spin7_generator(i) for i in range(1, 22)], name="spin7")


# --- irreducible so(3) representations on harmonic polynomials -------------

def _monomials(k):
    return [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]


def _fact(e):
    out = 1
    for x in e:
        for t in range(2, x + 1):
            out *= t
    return out


@lru_cache(maxsize=None)
def so3_irrep(k):
    """Spin-k real irreducible representation of so(3), dimension 2k+1.

    Acts on harmonic homogeneous cubics (etc.) in three variables by the
    rotation fields.  The invariant form is the Fischer product; when its
    Gram matrix admits a rational orthonormal basis it is used, otherwise
    the form is carried along with the algebra.
    """
    if k < 1:
        raise InvalidSpec("so3 irrep needs k >= 1")
    mons = _monomials(k)
    idx = {m: i for i, m in enumerate(mons)}
    lower = _monomials(k - 2) if k >= 2 else []
    lidx = {m: i for i, m in enumerate(lower)}
    # Laplacian as a matrix from degree k to degree k-2
    lap = zeros(max(len(lower), 1), len(mons))
    for j, (a, b, c) in enumerate(mons):
        for axis, e in enumerate((a, b, c)):
            if e >= 2:
                t = [a, b, c]
                t[axis] -= 2
                lap[lidx[tuple(t)], j] += e * (e - 1)
    harm = kernel(lap) if lower else identity(len(mons))
    harm = [harm[i] for i in range(harm.shape[0])]
    assert len(harm) == 2 * k + 1

    def rotate(poly, i, j):
        # x_i d/dx_j - x_j d/dx_i on a coefficient vector
        out = zeros(len(mons))
        for col, c in enumerate(poly):
            if not c:
                continue
            e = mons[col]
            if e[j]:
                t = list(e)
                t[j] -= 1
                t[i] += 1
                out[idx[tuple(t)]] += c * e[j]
            if e[i]:
                t = list(e)
                t[i] -= 1
                t[j] += 1
                out[idx[tuple(t)]] -= c * e[i]
        return out

    weights = [mpq(_fact(m)) for m in mons]

    def fischer(p, q):
        return sum((w * a * b for w, a, b in zip(weights, p, q)), mpq(0))

    # orthogonalise (Gram-Schmidt over Q)
    ortho = []
    for h in harm:
        v = h.copy()
        for o in ortho:
            v = v - o * (fischer(v, o) / fischer(o, o))
        ortho.append(v)
    norms = [fischer(o, o) for o in ortho]
    scaled = []
    all_square = True
    for o, nrm in zip(ortho, norms):
        r = _rational_sqrt(nrm)
        if r is None:
            all_square = False
            break
        scaled.append(o * (1 / r))
    if all_square:
        basis = scaled
        form = None
    else:
        basis = ortho
        form = zeros(2 * k + 1, 2 * k + 1)
        for i, nrm in enumerate(norms):
            form[i, i] = nrm
    gens = []
    for i, j in ((1, 2), (2, 0), (0, 1)):
        g = zeros(2 * k + 1, 2 * k + 1)
        for c, col in enumerate(basis):
            img = rotate(col, i, j)
            for r, row in enumerate(basis):
                g[r, c] = fischer(row, img) / fischer(row, row)
        gens.append(g)
    return LieAlgebraBasis(gens, name=f"so3irrep({k})", form=form)


def _rational_sqrt(q):
    from gmpy2 import is_square, isqrt

    q = mpq(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if is_square(n) and is_square(d):
        return mpq(isqrt(n), isqrt(d))
    return None


def adjoint(h):
    """Adjoint representation of h on itself, with the trace form as metric."""
    d = h.dim
    mats = []
    for a in h:
        cols = [h.coordinates(bracket(a, b)) for b in h]
        mats.append(np.array(cols, dtype=object).T)
    form = zeros(d, d)
    for i in range(d):
        for j in range(d):
            form[i, j] = -sum((x for x in (h[i] @ h[j]).diagonal()), mpq(0))
    return LieAlgebraBasis(mats, name=f"ad({h.name})", form=form)


def with_center(h, name=None):
    """h plus a one-dimensional central complex structure."""
    n = h.n
    if n % 4 == 0 and h.name.startswith("sp("):
        J = quaternionic_structures(n // 4)[0]
    elif n % 2 == 0:
        J = complex_structure(n // 2)
    else:
        raise InvalidSpec(f"no complex structure on R^{n}")
    if any(not _is_zero(bracket(J, a)) for a in h):
        raise InvalidSpec(f"{h.name} does not commute with the complex structure")
    if h.contains(J):
        return h
    return span_algebra(h.matrices + [J], name=name or f"{h.name}+t", form=h.form)


def _is_zero(a):
    return not any(x for x in a.flat)


_NAME = re.compile(r"^(so|u|su|sp|spsp1|so3irrep):(\d+)$")


def parse_algebra(name):
    """Parse names like so:5, u:2, sp:2+t, g2, spin7, so3irrep:3."""
    text = name.strip().lower().replace(" ", "")
    plus_t = text.endswith("+t")
    if plus_t:
        text = text[:-2]
    if text == "g2":
        h = g2()
    elif text == "spin7":
        h = spin7()
    else:
        m = _NAME.match(text)
        if not m:
            raise UnknownAlgebra(f"unknown algebra name {name!r}")
        kind, k = m.group(1), int(m.group(2))
        if k < 1:
            raise UnknownAlgebra(f"bad size in {name!r}")
        if kind == "so":
            h = so(k)
        elif kind == "u":
            h = u(k)
        elif kind == "su":
            h = su(k)
        elif kind == "sp":
            h = sp(k)
        elif kind == "spsp1":
            h = spsp1(k)
        else:
            h = so3_irrep(k)
    if plus_t:
        h = with_center(h)
    return h


def catalog_for_dimension(n):
    """Named algebras acting on R^n, used to identify classified subalgebras."""
    out = [("0", LieAlgebraBasis.zero(n)), (f"so({n})", so(n))]
    if n % 2 == 0:
        m = n // 2
        out += [(f"u({m})", u(m)), (f"su({m})", su(m))]
    if n % 4 == 0:
        k = n // 4
        out += [(f"sp({k})", sp(k)), (f"sp({k})+sp(1)", spsp1(k))]
        out.append((f"sp({k})+t", with_center(sp(k))))
    if n == 7:
        out.append(("G2", g2()))
    if n == 8:
        out.append(("spin(7)", spin7()))
    return out


def identify(h):
    """Catalog name of h if it matches one exactly (same embedding), else None."""
    for name, cand in catalog_for_dimension(h.n):
        if cand.dim == h.dim and (h.dim == 0 or cand.same_algebra(h)):
            return name
    return None


__all__ = [
    "adjoint",
    "catalog_for_dimension",
    "center",
    "complex_structure",
    "derived_algebra",
    "g2",
    "g2_generator",
    "identify",
    "parse_algebra",
    "quaternionic_structures",
    "so",
    "so3_irrep",
    "sp",
    "sp1",
    "spin7",
    "spin7_generator",
    "spsp1",
    "su",
    "u",
    "with_center",
]
