"""Lorentzian curvature tensors with values in sim(n), in component form.

A tensor R in R(g^{1,h}) is fixed by (lam, v, R0, P, T):

    R(p, q) = -lam p^q - p^v
    R(X, Y) = R0(X, Y) + p^(P(X)Y - P(Y)X)
    R(X, q) = -g(v, X) p^q + P(X) - p^T(X),   R(p, X) = 0.

In the (a, A, X) picture R(p, q) = (lam, 0, v), R(X, q) = (g(v, X), P(X),
T(X)) and R(X, Y) = (0, R0(X, Y), P(Y)X - P(X)Y).  The Witt basis is
ordered (p, e_1..e_n, q).
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from gmpy2 import mpq

from ..errors import ConstraintViolated, InvalidSpec, NotInSimN
from ..liealg.catalog import so
from ..liealg.core import witt_form
from ..liealg.sim import SimElement, sim_embed
from ..linalg import Subspace, is_zero, kernel, mat, vec, zeros
from .spaces import AlgCurvTensor, WeakCurvTensor, pspace, rspace


@dataclass
class CurvatureData:
    lam: object
    v: np.ndarray
    R0: AlgCurvTensor
    P: WeakCurvTensor
    T: np.ndarray

    @property
    def n(self):
        return len(self.v)

    @classmethod
    def zero(cls, h):
        n = h.n
        return cls(mpq(0), zeros(n), AlgCurvTensor(n, {}), WeakCurvTensor(h, zeros(n, h.dim)), zeros(n, n))

    def __eq__(self, other):
        return (
            self.lam == other.lam
            and is_zero(self.v - other.v)
            and self.R0 == other.R0
            and all(is_zero(a - b) for a, b in zip(self.P.images(), other.P.images()))
            and is_zero(self.T - other.T)
        )

    __hash__ = None



# name used by the published interface
Theorem13Data = CurvatureData

def _unit(n, i):
    e = zeros(n)
    e[i] = mpq(1)
    return e


def _check_data(data, h):
    n = data.n
    if data.P.n != n or data.R0.N != n or data.T.shape != (n, n):
        raise ConstraintViolated("components have inconsistent sizes")
    if not is_zero(data.T - data.T.T):
        raise ConstraintViolated("T must be symmetric")
    if data.P.cyclic_defect():
        raise ConstraintViolated("P does not satisfy the cyclic identity")
    for img in data.P.images():
        if not h.contains(img):
            raise ConstraintViolated("P takes values outside h")
    if data.R0.bianchi_defect():
        raise ConstraintViolated("R0 violates the first Bianchi identity")
    for m in data.R0.values.values():
        if not h.contains(m):
            raise ConstraintViolated("R0 takes values outside h")


def _phi_of(spec, m):
    c = spec.h.coordinates(m)
    return sum((a * b for a, b in zip(spec.phi, c)), mpq(0))


def _psi_of(spec, m):
    c = spec.h.coordinates(m)
    return spec.psi @ c


def check_type_constraints(data, spec):
    """Raise ConstraintViolated naming the first failing condition."""
    t = spec.type_tag
    n = data.n
    if t >= 2 and data.lam:
        raise ConstraintViolated(f"type {t} requires lambda = 0")
    if t in (2, 4) and not is_zero(data.v):
        raise ConstraintViolated(f"type {t} requires v = 0")
    if t == 3:
        for m in data.R0.values.values():
            if _phi_of(spec, m):
                raise ConstraintViolated("type 3 requires R0 with values in ker phi")
        for i in range(n):
            if data.v[i] != _phi_of(spec, data.P.image(i)):
                raise ConstraintViolated("type 3 requires g(v, .) = phi(P(.))")
    if t == 4:
        for m in data.R0.values.values():
            if not is_zero(_psi_of(spec, m)):
                raise ConstraintViolated("type 4 requires R0 with values in ker psi")
        for i in range(n):
            if not is_zero(data.T[spec.m:, i] - _psi_of(spec, data.P.image(i))):
                raise ConstraintViolated("type 4 requires pr o T = psi o P")


def assemble(data, spec=None):
    """The Lorentzian tensor on R^{1,n+1} built from the components."""
    n = data.n
    N = n + 2
    if spec is not None:
        if spec.n != n:
            raise InvalidSpec("spec and data have different n")
        _check_data(data, spec.h)
        check_type_constraints(data, spec)
    zA, zX = zeros(n, n), zeros(n)
    vals = {(0, N - 1): SimElement(data.lam, zA, data.v).to_matrix()}
    imgs = data.P.images()
    for i in range(n):
        vals[(1 + i, N - 1)] = SimElement(data.v[i], imgs[i], data.T[:, i]).to_matrix()
    for i, j in combinations(range(n), 2):
        X = imgs[j][:, i] - imgs[i][:, j]
        vals[(1 + i, 1 + j)] = SimElement(0, data.R0.value(i, j), X).to_matrix()
    return AlgCurvTensor(N, vals, witt_form(n))


def extract(R, h=None):
    """Inverse of ``assemble``; raises NotInSimN if R is not of that form."""
    N = R.N
    n = N - 2
    h = so(n) if h is None else h
    q = N - 1
    for i in range(1, q):
        if not is_zero(R.value(0, i)):
            raise NotInSimN("R(p, X) must vanish")
    pq = SimElement.from_matrix(R.value(0, q))
    if not is_zero(pq.A):
        raise NotInSimN("R(p, q) has an so(n) component")
    lam, v = pq.a, pq.X.copy()
    P_imgs, T = [], zeros(n, n)
    for i in range(n):
        el = SimElement.from_matrix(R.value(1 + i, q))
        if el.a != v[i]:
            raise NotInSimN("R(X, q) has an inconsistent p^q component")
        P_imgs.append(el.A)
        T[:, i] = el.X
    R0_vals = {}
    for i, j in combinations(range(n), 2):
        el = SimElement.from_matrix(R.value(1 + i, 1 + j))
        if el.a:
            raise NotInSimN("R(X, Y) has a p^q component")
        if not is_zero(el.X - (P_imgs[j][:, i] - P_imgs[i][:, j])):
            raise NotInSimN("R(X, Y) translation part disagrees with P")
        R0_vals[(i, j)] = el.A
    try:
        P = WeakCurvTensor.from_images(h, P_imgs)
    except ConstraintViolated:
        raise NotInSimN("P takes values outside h") from None
    return CurvatureData(lam, v, AlgCurvTensor(n, R0_vals), P, T)


def witt_change_matrix(mu, W):
    """Columns are p', e_1', .., e_n', q' in the old Witt basis."""
    mu = mpq(mu)
    if not mu:
        raise InvalidSpec("mu must be nonzero")
    W = vec(W)
    n = len(W)
    N = n + 2
    B = zeros(N, N)
    B[0, 0] = mu
    for i in range(n):
        B[0, 1 + i] = -W[i]
        B[1 + i, 1 + i] = mpq(1)
    ww = sum((w * w for w in W), mpq(0))
    B[0, N - 1] = -ww / 2 / mu
    for i in range(n):
        B[1 + i, N - 1] = W[i] / mu
    B[N - 1, N - 1] = 1 / mu
    return B


def rebase_witt(data, mu, W, h=None):
    """Components of the same tensor relative to p' = mu p and q'."""
    R = assemble(data)
    B = witt_change_matrix(mu, W)
    return extract(R.change_basis(B), h or data.P.h)


def rebase_formula(data, mu, W):
    """lam, v, R0 and P images after rebasing, by the closed formulas.

    T has no closed formula here; ``rebase_witt`` recovers it.
    """
    mu = mpq(mu)
    W = vec(W)
    v = (data.v - W * data.lam) / mu
    P = [(data.P.image(i) + data.R0(_unit(data.n, i), W)) / mu for i in range(data.n)]
    return data.lam, v, data.R0, P


# --- dimension bookkeeping --------------------------------------------------

def data_basis(spec):
    """Basis of the component data allowed for ``spec``; assembly is injective."""
    h, n = spec.h, spec.n
    R0_basis = rspace(h).elements()
    P_basis = pspace(h).elements()
    sym = [(i, j) for i in range(n) for j in range(i, n)]
    blocks = []  # generators of the full type-1 data space
    z = CurvatureData.zero(h)
    blocks.append(CurvatureData(mpq(1), z.v, z.R0, z.P, z.T))
    for i in range(n):
        blocks.append(CurvatureData(mpq(0), _unit(n, i), z.R0, z.P, z.T))
    for R0 in R0_basis:
        blocks.append(CurvatureData(mpq(0), z.v, R0, z.P, z.T))
    for P in P_basis:
        blocks.append(CurvatureData(mpq(0), z.v, z.R0, P, z.T))
    for i, j in sym:
        T = zeros(n, n)
        T[i, j] = T[j, i] = mpq(1)
        blocks.append(CurvatureData(mpq(0), z.v, z.R0, z.P, T))
    if spec.type_tag == 1:
        return blocks
    rows = _constraint_rows(spec, blocks)
    ker = kernel(np.array(rows, dtype=object).T) if rows else [
        _unit(len(blocks), k) for k in range(len(blocks))
    ]
    return [_combine(blocks, c, h) for c in ker]


def _constraint_rows(spec, blocks):
    """Each block contributes one column: its constraint defect vector."""
    cols = []
    for d in blocks:
        entries = []
        t = spec.type_tag
        entries.append(d.lam)
        if t in (2, 4):
            entries.extend(d.v)
        if t == 3:
            entries.extend(_phi_of(spec, d.R0.value(a, b)) for a, b in combinations(range(d.n), 2))
            entries.extend(d.v[i] - _phi_of(spec, d.P.image(i)) for i in range(d.n))
        if t == 4:
            for a, b in combinations(range(d.n), 2):
                entries.extend(_psi_of(spec, d.R0.value(a, b)))
            for i in range(d.n):
                entries.extend(d.T[spec.m:, i] - _psi_of(spec, d.P.image(i)))
        cols.append(entries)
    return cols


def _combine(blocks, c, h):
    n = blocks[0].n
    out = CurvatureData.zero(h)
    lam, v, T = mpq(0), zeros(n), zeros(n, n)
    R0 = AlgCurvTensor(n, {})
    P = WeakCurvTensor(h, zeros(n, h.dim))
    for ck, d in zip(c, blocks):
        if not ck:
            continue
        lam += ck * d.lam
        v = v + d.v * ck
        T = T + d.T * ck
        R0 = R0 + d.R0.scale(ck)
        P = P + d.P.scale(ck)
    out.lam, out.v, out.T, out.R0, out.P = lam, v, T, R0, P
    return out


def assemble_theorem13(data, spec):
    """``assemble`` with the type constraints of ``spec`` enforced."""
    return assemble(data, spec)


def assembled_subspace(spec):
    """Span of assembled tensors, as vectors of R(e_a, e_b) entries."""
    N = spec.n + 2
    vecs = [_flatten(assemble(d)) for d in data_basis(spec)]
    return Subspace.span(vecs, N * N * (N * (N - 1) // 2)) if vecs else Subspace.zero(N * N * (N * (N - 1) // 2))


def _flatten(R):
    N = R.N
    parts = [R.value(a, b).reshape(-1) for a, b in combinations(range(N), 2)]
    return np.concatenate(parts)


def rspace_subspace(g):
    """rspace(g) in the same flattened coordinates as ``assembled_subspace``."""
    N = g.n
    L = N * N * (N * (N - 1) // 2)
    elems = rspace(g).elements()
    if not elems:
        return Subspace.zero(L)
    return Subspace.span([_flatten(R) for R in elems], L)


def dimension_identity(h):
    """(dim R(g^{1,h}), 1 + n + n(n+1)/2 + dim R(h) + dim P(h))."""
    from ..liealg.sim import SimSubalgebraSpec

    n = h.n
    lhs = rspace(sim_embed(SimSubalgebraSpec(1, h))).dim
    rhs = 1 + n + n * (n + 1) // 2 + rspace(h).dim + pspace(h).dim
    return lhs, rhs
