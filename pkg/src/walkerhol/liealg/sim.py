"""sim(n) inside so(1, n+1) and its weakly irreducible subalgebras.

Matrices act on the basis (p, e_1..e_n, q) with g(p, q) = 1.  An element
(a, A, X) of sim(n) is the matrix

    [[a, X^t, 0],
     [0,  A, -X],
     [0,  0, -a]].

A subalgebra is described by a ``SimSubalgebraSpec`` carrying its type
(1..4), the orthogonal part h, and the extra data phi (type 3) or m, psi
(type 4).  ``phi`` is a coefficient vector on h's basis; ``psi`` is a
(n - m) x dim h matrix whose column k is psi(h_k) in coordinates e_{m+1}..e_n.
"""

from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from ..errors import InvalidSpec, NotInSimN, NotWeaklyIrreducibleShape, ShapeMismatch
from ..linalg import Subspace, SpanBuilder, is_zero, kernel, rank, vec, zeros
from .core import LieAlgebraBasis, bracket, derived_algebra, span_algebra, witt_form


@dataclass
class SimElement:
    a: object
    A: np.ndarray
    X: np.ndarray

    def to_matrix(self):
        n = self.A.shape[0]
        N = n + 2
        m = zeros(N, N)
        m[0, 0] = mpq(self.a)
        m[N - 1, N - 1] = -mpq(self.a)
        m[1:N - 1, 1:N - 1] = self.A
        for i in range(n):
            m[0, 1 + i] = self.X[i]
            m[1 + i, N - 1] = -self.X[i]
        return m

    @classmethod
    def from_matrix(cls, m):
        N = m.shape[0]
        n = N - 2
        if any(m[i, 0] for i in range(1, N)):
            raise NotInSimN("element does not preserve the null line R p")
        a = m[0, 0]
        A = m[1:N - 1, 1:N - 1].copy()
        X = m[0, 1:N - 1].copy()
        el = cls(a, A, X)
        if not is_zero(el.to_matrix() - m):
            raise NotInSimN("matrix is not of the form (a, A, X)")
        if not is_zero(A + A.T):
            raise NotInSimN("so(n) block is not skew")
        return el


def sim_bracket(x, y):
    """Bracket of (a, A, X) elements computed from the matrix product."""
    return SimElement.from_matrix(bracket(x.to_matrix(), y.to_matrix()))


@dataclass
class SimSubalgebraSpec:
    type_tag: int
    h: LieAlgebraBasis
    phi: object = None
    m: int = None
    psi: object = None
    n: int = field(default=None)

    def __post_init__(self):
        if self.n is None:
            self.n = self.h.n
        if self.type_tag not in (1, 2, 3, 4):
            raise InvalidSpec(f"type must be 1..4, got {self.type_tag}")
        self.validate()

    def validate(self):
        h = self.h
        if h.n != self.n:
            raise InvalidSpec("h must act on R^n")
        if not h.has_identity_form():
            raise InvalidSpec("sim(n) embedding needs h orthogonal for the standard form")
        if self.type_tag == 3:
            if self.phi is None or len(self.phi) != h.dim:
                raise InvalidSpec("type 3 needs phi as a coefficient vector on h")
            phi = vec(self.phi)
            if is_zero(phi):
                raise InvalidSpec("type 3 needs phi != 0")
            self.phi = phi
            dh = derived_algebra(h)
            for b in dh:
                c = h.coordinates(b)
                if sum((x * y for x, y in zip(phi, c)), mpq(0)):
                    raise InvalidSpec("phi must vanish on the derived algebra [h, h]")
        if self.type_tag == 4:
            m = self.m
            if m is None or not 0 <= m < self.n:
                raise InvalidSpec("type 4 needs 0 <= m < n")
            for b in h:
                if not is_zero(b[m:, :]) or not is_zero(b[:, m:]):
                    raise InvalidSpec("type 4 needs h inside so(m) on the first m coordinates")
            psi = np.asarray(self.psi, dtype=object)
            if psi.shape != (self.n - m, h.dim):
                raise InvalidSpec("psi must be (n - m) x dim h")
            psi = np.vectorize(mpq, otypes=[object])(psi) if psi.size else zeros(self.n - m, h.dim)
            self.psi = psi
            if rank(psi) != self.n - m:
                raise InvalidSpec("psi must be surjective onto R^(n-m)")
            dh = derived_algebra(h)
            for b in dh:
                c = h.coordinates(b)
                if not is_zero(psi @ c):
                    raise InvalidSpec("psi must vanish on the derived algebra [h, h]")

    @property
    def dim(self):
        d = self.h.dim + self.n
        if self.type_tag == 1:
            d += 1
        if self.type_tag == 4:
            d -= self.n - self.m
        return d

    def label(self, h_name=None):
        name = h_name or self.h.name
        if self.type_tag in (1, 2):
            return f"g^{{{self.type_tag},{name}}}"
        if self.type_tag == 3:
            return f"g^{{3,{name},phi}}"
        return f"g^{{4,{name},{self.m},psi}}"


def sim_embed(spec):
    """Basis matrices of the subalgebra of sim(n) described by ``spec``."""
    n = spec.n
    h = spec.h
    mats = []
    zero_A = zeros(n, n)
    zero_X = zeros(n)
    if spec.type_tag == 1:
        mats.append(SimElement(1, zero_A, zero_X).to_matrix())
    for k, A in enumerate(h):
        if spec.type_tag == 3:
            mats.append(SimElement(spec.phi[k], A, zero_X).to_matrix())
        elif spec.type_tag == 4:
            X = zeros(n)
            X[spec.m:] = spec.psi[:, k]
            mats.append(SimElement(0, A, X).to_matrix())
        else:
            mats.append(SimElement(0, A, zero_X).to_matrix())
    top = spec.m if spec.type_tag == 4 else n
    for i in range(top):
        X = zeros(n)
        X[i] = mpq(1)
        mats.append(SimElement(0, zero_A, X).to_matrix())
    return span_algebra(mats, name=spec.label(), form=witt_form(n), check=False)


def as_subspace(mats, N):
    return Subspace.span([np.asarray(m, dtype=object).reshape(-1) for m in mats], N * N)


def classify(mats, n):
    """Recover a SimSubalgebraSpec from a basis of a subalgebra of sim(n).

    Raises NotInSimN if some element leaves sim(n), and
    NotWeaklyIrreducibleShape if the subalgebra is not of one of the four
    types in the given basis.
    """
    N = n + 2
    mats = [np.asarray(m, dtype=object) for m in mats]
    els = [SimElement.from_matrix(m) for m in mats]
    if not els:
        raise NotWeaklyIrreducibleShape("zero subalgebra")
    # coordinates (a, A, X) flattened: [a] + A.flat + X
    rows = [np.concatenate([vec([e.a]), e.A.reshape(-1), e.X]) for e in els]
    sub = Subspace.span(rows, 1 + n * n + n)
    # translation part: elements with a = 0, A = 0
    proj_aA = np.array([r[: 1 + n * n] for r in sub.vectors()], dtype=object)
    ker = kernel(proj_aA.T) if sub.dim else zeros(0, 0)
    trans_vecs = [k @ np.array([r[1 + n * n:] for r in sub.vectors()], dtype=object) for k in ker]
    T = Subspace.span(trans_vecs, n) if trans_vecs else Subspace.zero(n)
    # orthogonal part
    A_mats = [e.A for e in els if not is_zero(e.A)]
    h = span_algebra(A_mats, name="h", check=False) if A_mats else LieAlgebraBasis.zero(n)
    # the (a, A) projection
    aA = Subspace.span([r[: 1 + n * n] for r in rows], 1 + n * n)
    has_pure_a = aA.contains(np.concatenate([vec([1]), zeros(n * n)]))
    a_nonzero = any(e.a for e in els)

    if T.dim == n:
        if has_pure_a:
            spec = SimSubalgebraSpec(1, h)
        elif not a_nonzero:
            spec = SimSubalgebraSpec(2, h)
        else:
            # a = phi(A) on the (a, A) projection
            from ..linalg import solve

            basis_rows = aA.vectors()
            M = np.array([r[1:] for r in basis_rows], dtype=object).T
            phi = []
            for b in h:
                c = solve(M, b.reshape(-1))
                if c is None:
                    raise NotWeaklyIrreducibleShape("inconsistent (a, A) projection")
                phi.append(sum((ci * r[0] for ci, r in zip(c, basis_rows)), mpq(0)))
            spec = SimSubalgebraSpec(3, h, phi=phi)
    else:
        if a_nonzero:
            raise NotWeaklyIrreducibleShape("translation part is proper but a-components occur")
        m = T.dim
        if m and T != Subspace.span([_unit(n, i) for i in range(m)], n):
            raise NotWeaklyIrreducibleShape("translation part is not spanned by e_1..e_m")
        for b in h:
            if not is_zero(b[m:, :]) or not is_zero(b[:, m:]):
                raise NotWeaklyIrreducibleShape("h does not act on the first m coordinates only")
        # psi from the X-components of lifts of h's basis
        psi = zeros(n - m, h.dim)
        from ..linalg import solve

        basis_rows = sub.vectors()
        M = np.array([r[1: 1 + n * n] for r in basis_rows], dtype=object).T
        for k, b in enumerate(h):
            c = solve(M, b.reshape(-1))
            X = sum((ci * r[1 + n * n:] for ci, r in zip(c, basis_rows)), zeros(n))
            psi[:, k] = X[m:]
        try:
            spec = SimSubalgebraSpec(4, h, m=m, psi=psi)
        except InvalidSpec as exc:
            raise NotWeaklyIrreducibleShape(str(exc)) from None
    if not as_subspace(sim_embed(spec).matrices, N) == as_subspace(mats, N):
        raise NotWeaklyIrreducibleShape("subalgebra is not one of the four types")
    return spec


def _unit(n, i):
    v = zeros(n)
    v[i] = mpq(1)
    return v


def sim_n(n):
    """All of sim(n) = (R + so(n)) + R^n."""
    from .catalog import so

    return sim_embed(SimSubalgebraSpec(1, so(n)))


def classify_sim_subalgebra(g):
    """``classify`` for a LieAlgebraBasis of (n+2) x (n+2) matrices."""
    return classify(g.matrices, g.n - 2)


def equals_spec(mats, spec):
    N = spec.n + 2
    return as_subspace(mats, N) == as_subspace(sim_embed(spec).matrices, N)
