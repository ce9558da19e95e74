"""Matrix Lie algebras over Q: bases, brackets, generated subalgebras."""

import numpy as np
from gmpy2 import mpq

from ..errors import NotClosed, ShapeMismatch
from ..linalg import SpanBuilder, Subspace, identity, is_zero, zeros


def E(n, i, j):
    """Elementary skew matrix with (E_ij)_kl = d_ik d_jl - d_il d_jk, 1-based."""
    m = zeros(n, n)
    if i != j:
        m[i - 1, j - 1] = mpq(1)
        m[j - 1, i - 1] = mpq(-1)
    return m


def bracket(a, b):
    return a @ b - b @ a


def witt_form(n):
    """Gram matrix of the basis (p, e_1..e_n, q): g(p,q)=1, g(e_i,e_j)=delta."""
    N = n + 2
    g = zeros(N, N)
    g[0, N - 1] = g[N - 1, 0] = mpq(1)
    for i in range(1, N - 1):
        g[i, i] = mpq(1)
    return g


def is_skew(a, form=None):
    g = identity(a.shape[0]) if form is None else form
    return is_zero(a.T @ g + g @ a)


def _flat(m):
    return {i: x for i, x in enumerate(m.flat) if x}


class LieAlgebraBasis:
    """Linearly independent matrices closed under the bracket.

    ``form`` is the Gram matrix of the invariant bilinear form on the
    underlying vector space (identity unless stated otherwise).
    """

    def __init__(self, matrices, name="h", form=None, check=True):
        mats = [np.asarray(m, dtype=object) for m in matrices]
        if mats:
            n = mats[0].shape[0]
            if any(m.shape != (n, n) for m in mats):
                raise ShapeMismatch("basis matrices of differing size")
        else:
            n = 0 if form is None else form.shape[0]
        self.n = n
        self.name = name
        self.form = identity(n) if form is None else form
        self.matrices = mats
        if check:
            sb = SpanBuilder()
            for m in mats:
                if not sb.add(_flat(m)):
                    raise ShapeMismatch("basis matrices are linearly dependent")
            for m in mats:
                if not is_skew(m, self.form):
                    raise ShapeMismatch("basis matrix is not skew for the declared form")
            for i, a in enumerate(mats):
                for b in mats[i + 1:]:
                    if not sb.contains(_flat(bracket(a, b))):
                        raise NotClosed(f"{name}: bracket leaves the span")

    @classmethod
    def zero(cls, n, form=None):
        obj = cls([], name="0", form=form, check=False)
        obj.n = n
        if form is None:
            obj.form = identity(n)
        return obj

    @property
    def dim(self):
        return len(self.matrices)

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, k):
        return self.matrices[k]

    def has_identity_form(self):
        return is_zero(self.form - identity(self.n))

    def subspace(self):
        return Subspace.span([m.reshape(-1) for m in self.matrices], self.n * self.n)

    def contains(self, m):
        return self.subspace().contains(np.asarray(m, dtype=object).reshape(-1))

    def coordinates(self, m):
        """Coefficients c with m = sum c_k basis_k, or None."""
        if not self.matrices:
            return np.empty(0, dtype=object) if is_zero(m) else None
        from ..linalg import solve

        a = np.array([b.reshape(-1) for b in self.matrices], dtype=object).T
        return solve(a, np.asarray(m, dtype=object).reshape(-1))

    def combine(self, coeffs):
        out = zeros(self.n, self.n)
        for c, m in zip(coeffs, self.matrices):
            if c:
                out = out + m * c
        return out

    def same_algebra(self, other):
        return self.n == other.n and self.subspace() == other.subspace()

    def __repr__(self):
        return f"LieAlgebraBasis({self.name}, dim={self.dim}, n={self.n})"


def generated_subalgebra(seeds, name="h", form=None, max_dim=None):
    """Smallest bracket-closed subspace containing ``seeds``."""
    seeds = [np.asarray(s, dtype=object) for s in seeds]
    if not seeds:
        raise ShapeMismatch("no seeds given")
    n = seeds[0].shape[0]
    sb = SpanBuilder()
    basis = []
    queue = []
    for s in seeds:
        if sb.add(_flat(s)):
            basis.append(s)
            queue.append(s)
    while queue:
        a = queue.pop()
        for b in list(basis):
            c = bracket(a, b)
            if sb.add(_flat(c)):
                basis.append(c)
                queue.append(c)
                if max_dim is not None and len(basis) > max_dim:
                    raise NotClosed("generated algebra exceeds the dimension bound")
    return LieAlgebraBasis(_canonical(basis, n), name=name, form=form, check=False)


def _canonical(mats, n):
    """RREF basis of the span of ``mats``, returned as matrices."""
    if not mats:
        return []
    sub = Subspace.span([m.reshape(-1) for m in mats], n * n)
    return [v.reshape(n, n) for v in sub.vectors()]


def span_algebra(mats, name="h", form=None, check=True):
    """LieAlgebraBasis on the canonical basis of span(mats)."""
    mats = [np.asarray(m, dtype=object) for m in mats]
    n = mats[0].shape[0] if mats else (form.shape[0] if form is not None else 0)
    if not mats:
        return LieAlgebraBasis.zero(n, form)
    return LieAlgebraBasis(_canonical(mats, n), name=name, form=form, check=check)


def derived_algebra(h):
    mats = [bracket(a, b) for i, a in enumerate(h) for b in h.matrices[i + 1:]]
    mats = [m for m in mats if not is_zero(m)]
    if not mats:
        return LieAlgebraBasis.zero(h.n, h.form)
    return span_algebra(mats, name=f"[{h.name},{h.name}]", form=h.form)


def center(h):
    """Elements of h commuting with all of h."""
    from ..linalg import kernel

    d = h.dim
    if d == 0:
        return LieAlgebraBasis.zero(h.n, h.form)
    # sum_k c_k [b_k, b_j] = 0 for all j
    rows = []
    for j in range(d):
        cols = [bracket(h[k], h[j]).reshape(-1) for k in range(d)]
        rows.append(np.array(cols, dtype=object).T)
    system = np.concatenate(rows, axis=0)
    ker = kernel(system)
    mats = [h.combine(k) for k in ker]
    if not mats:
        return LieAlgebraBasis.zero(h.n, h.form)
    return span_algebra(mats, name=f"z({h.name})", form=h.form)


def direct_sum(*algs, name=None):
    """Sum of subalgebras of the same gl(n); they need not commute."""
    n = algs[0].n
    mats = [m for a in algs for m in a]
    return span_algebra(mats, name=name or "+".join(a.name for a in algs), form=algs[0].form)


def commutant(ambient, ops, name="commutant"):
    """Elements of ``ambient`` commuting with every matrix in ``ops``."""
    from ..linalg import kernel

    d = ambient.dim
    blocks = []
    for J in ops:
        cols = [bracket(ambient[k], J).reshape(-1) for k in range(d)]
        blocks.append(np.array(cols, dtype=object).T)
    ker = kernel(np.concatenate(blocks, axis=0))
    mats = [ambient.combine(k) for k in ker]
    return span_algebra(mats, name=name, form=ambient.form)
