"""Exact linear algebra over Q.

Matrices are numpy object arrays of ``mpq``.  Row reduction clears
denominators row by row and runs Bareiss fraction-free elimination on
integers; the reduced row echelon form is then recovered over Q, so
subspaces have a canonical basis and compare by equality of arrays.
"""

import numpy as np
from gmpy2 import lcm, mpq, mpz

from .errors import ShapeMismatch
from .exact.poly import rat

ZERO = mpq(0)
ONE = mpq(1)


def mat(rows):
    """Object array of mpq from nested sequences."""
    rows = [[rat(x) for x in r] for r in rows]
    if not rows:
        return np.empty((0, 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ShapeMismatch("ragged rows")
    a = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            a[i, j] = x
    return a


def vec(xs):
    a = np.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        a[i] = rat(x)
    return a


def zeros(r, c=None):
    if c is None:
        a = np.empty(r, dtype=object)
    else:
        a = np.empty((r, c), dtype=object)
    a.fill(ZERO)
    return a


def identity(n):
    a = zeros(n, n)
    for i in range(n):
        a[i, i] = ONE
    return a


def is_zero(a):
    return not any(x for x in np.asarray(a).flat)


def _integer_rows(m):
    out = []
    for row in m:
        l = mpz(1)
        for x in row:
            if x:
                l = lcm(l, x.denominator)
        out.append([mpz(x * l) for x in row])
    return out


def rref(m):
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ShapeMismatch("rref expects a 2-d array")
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return zeros(0, ncols), []
    a = _integer_rows(m)
    pivots = []
    r = 0
    prev = mpz(1)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        rowr = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            if f:
                for j in range(c + 1, ncols):
                    ai[j] = (piv * ai[j] - f * rowr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    ai[j] = (piv * ai[j]) // prev
            ai[c] = mpz(0)
        prev = piv
        pivots.append(c)
        r += 1
    # back substitution over Q
    rows = [[mpq(x) for x in a[i]] for i in range(r)]
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        inv = 1 / rows[k][c]
        rows[k] = [x * inv for x in rows[k]]
        rk = rows[k]
        for i in range(k):
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rk)]
    out = zeros(r, ncols)
    for i, row in enumerate(rows):
        out[i, :] = row
    return out, pivots


def rank(m):
    return len(rref(m)[1])


def kernel(m):
    """Basis of {x : m @ x = 0} as rows of an array."""
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    r, pivots = rref(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = zeros(len(free), ncols)
    for k, f in enumerate(free):
        basis[k, f] = ONE
        for i, p in enumerate(pivots):
            basis[k, p] = -r[i, f]
    return basis


def solve(a, b):
    """One solution x of a @ x = b, or None if inconsistent."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object).reshape(-1, 1)
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref(aug)
    n = a.shape[1]
    if n in pivots:
        return None
    x = zeros(n)
    for i, p in enumerate(pivots):
        x[p] = r[i, n]
    return x


def inverse(a):
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ShapeMismatch("inverse of non-square matrix")
    r, pivots = rref(np.concatenate([a, identity(n)], axis=1))
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return r[:, n:]


def det(a):
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    rows = [[rat(x) for x in r] for r in a]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


class Subspace:
    """Subspace of Q^d held by its canonical RREF basis."""

    def __init__(self, ambient_dim, basis_rref):
        self.ambient_dim = ambient_dim
        self.basis = basis_rref

    @classmethod
    def span(cls, vectors, ambient_dim=None):
        vs = [np.asarray(v, dtype=object).reshape(-1) for v in vectors]
        if ambient_dim is None:
            if not vs:
                raise ShapeMismatch("ambient dimension needed for an empty span")
            ambient_dim = len(vs[0])
        if any(len(v) != ambient_dim for v in vs):
            raise ShapeMismatch("vectors of differing length")
        if not vs:
            return cls(ambient_dim, zeros(0, ambient_dim))
        r, _ = rref(np.array(vs, dtype=object))
        return cls(ambient_dim, r)

    @classmethod
    def zero(cls, d):
        return cls(d, zeros(0, d))

    @classmethod
    def full(cls, d):
        return cls(d, identity(d))

    @property
    def dim(self):
        return self.basis.shape[0]

    def vectors(self):
        return [self.basis[i] for i in range(self.dim)]

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ShapeMismatch("subspaces of different ambient spaces")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.dim == other.dim and all(
            a == b for a, b in zip(self.basis.flat, other.basis.flat)
        )

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def contains(self, v):
        v = np.asarray(v, dtype=object).reshape(-1)
        if len(v) != self.ambient_dim:
            raise ShapeMismatch("vector length differs from ambient dimension")
        return self.coordinates(v) is not None

    def contains_subspace(self, other):
        self._check(other)
        return all(self.contains(v) for v in other.vectors())

    def coordinates(self, v):
        """Coefficients of v in the RREF basis, or None if v is outside."""
        v = np.asarray(v, dtype=object).reshape(-1)
        if self.dim == 0:
            return zeros(0) if is_zero(v) else None
        pivots = [next(j for j in range(self.ambient_dim) if row[j]) for row in self.basis]
        coeffs = vec([v[p] for p in pivots])
        resid = v - coeffs @ self.basis
        return coeffs if is_zero(resid) else None

    def intersection(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        stacked = np.concatenate([self.basis, -other.basis], axis=0).T
        ker = kernel(stacked)
        vs = [k[: self.dim] @ self.basis for k in ker]
        return Subspace.span(vs, self.ambient_dim)

    __and__ = intersection

    def complement_in(self, sup, gram=None):
        """Orthogonal complement of self inside ``sup`` for the pairing ``gram``."""
        self._check(sup)
        g = identity(self.ambient_dim) if gram is None else gram
        if sup.dim == 0:
            return Subspace.zero(self.ambient_dim)
        if self.dim == 0:
            return sup
        # x = c @ sup.basis with self.basis @ g @ x = 0
        cond = self.basis @ g @ sup.basis.T
        ker = kernel(cond)
        return Subspace.span([k @ sup.basis for k in ker], self.ambient_dim)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class SpanBuilder:
    """Incremental echelon basis for sparse vectors given as dicts.

    Keys may be any orderable hashables.  The basis is kept fully reduced,
    so reducing a new vector takes a single pass over its pivot keys.
    """

    def __init__(self):
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v):
        v = {k: c for k, c in v.items() if c}
        for k in [k for k in v if k in self.pivots]:
            c = v.get(k)
            if not c:
                continue
            for kk, bc in self.pivots[k].items():
                nv = v.get(kk, 0) - c * bc
                if nv:
                    v[kk] = nv
                else:
                    v.pop(kk, None)
        return v

    def add(self, v):
        """Insert v; return True if it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        for k, b in self.pivots.items():
            c = b.get(p)
            if c:
                for kk, rc in r.items():
                    nv = b.get(kk, 0) - c * rc
                    if nv:
                        b[kk] = nv
                    else:
                        b.pop(kk, None)
        self.pivots[p] = r
        return True

    def contains(self, v):
        return not self.reduce(v)

    def basis(self):
        return [self.pivots[k] for k in sorted(self.pivots)]
