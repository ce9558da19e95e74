"""Spaces of weak curvature tensors P(h) and algebraic curvature tensors R(g)."""

from itertools import combinations

import numpy as np
from gmpy2 import mpq

from ..errors import ShapeMismatch
from ..liealg.core import LieAlgebraBasis, bracket, span_algebra
from ..linalg import Subspace, identity, inverse, is_zero, kernel, vec, zeros


class WeakCurvTensor:
    """Linear map P: R^n -> h stored as coefficients (n x dim h)."""

    def __init__(self, h, coeffs):
        coeffs = np.asarray(coeffs, dtype=object)
        if coeffs.shape != (h.n, h.dim):
            raise ShapeMismatch(f"coefficients must be {h.n} x {h.dim}")
        self.h = h
        self.coeffs = coeffs

    @classmethod
    def from_images(cls, h, images):
        """Build from the matrices P(e_1), ..., P(e_n), which must lie in h."""
        rows = []
        for img in images:
            c = h.coordinates(img)
            if c is None:
                from ..errors import ConstraintViolated

                raise ConstraintViolated("an image does not lie in h")
            rows.append(c)
        if h.dim == 0:
            return cls(h, zeros(h.n, 0))
        return cls(h, np.array(rows, dtype=object))

    @property
    def n(self):
        return self.h.n

    def image(self, i):
        """P(e_i), 0-based."""
        return self.h.combine(self.coeffs[i])

    def images(self):
        return [self.image(i) for i in range(self.n)]

    def __call__(self, x):
        out = zeros(self.n, self.n)
        for i, xi in enumerate(x):
            if xi:
                out = out + self.image(i) * xi
        return out

    def vector(self):
        return self.coeffs.reshape(-1)

    def __add__(self, other):
        return WeakCurvTensor(self.h, self.coeffs + other.coeffs)

    def __sub__(self, other):
        return WeakCurvTensor(self.h, self.coeffs - other.coeffs)

    def scale(self, c):
        return WeakCurvTensor(self.h, self.coeffs * mpq(c))

    def is_zero(self):
        return is_zero(self.coeffs)

    def __eq__(self, other):
        return self.h is other.h and is_zero(self.coeffs - other.coeffs)

    __hash__ = None

    def cyclic_defect(self):
        """Triples (i, j, k) with a nonzero cyclic sum; empty iff P is in P(h)."""
        G = self.h.form
        imgs = self.images()
        bad = []
        for i, j, k in combinations(range(self.n), 3):
            s = (
                _g(G, imgs[i][:, j], k)
                + _g(G, imgs[j][:, k], i)
                + _g(G, imgs[k][:, i], j)
            )
            if s:
                bad.append(((i, j, k), s))
        return bad


def _g(G, x, k):
    # g(x, e_k)
    return sum((x[r] * G[r, k] for r in range(len(x)) if x[r]), mpq(0))


class PSpace:
    """P(h) with its basis of weak curvature tensors."""

    def __init__(self, h, subspace):
        self.h = h
        self.subspace = subspace

    @property
    def dim(self):
        return self.subspace.dim

    def elements(self):
        d = self.h.dim
        return [WeakCurvTensor(self.h, v.reshape(self.h.n, d)) for v in self.subspace.vectors()]

    def contains(self, P):
        return self.subspace.contains(P.vector())


def pspace(h):
    """Solve the cyclic identity g(P(X)Y,Z) + cyc = 0 on P in Hom(R^n, h).

    The cyclic sum is alternating for skew P(X), so only the C(n,3) triples
    i < j < k give independent equations.
    """
    n, d = h.n, h.dim
    if d == 0:
        return PSpace(h, Subspace.zero(0))
    G = h.form
    # B[k][a, b] = g(h_k e_a, e_b)
    B = [m.T @ G for m in h]
    rows = []
    for i, j, k in combinations(range(n), 3):
        row = zeros(n * d)
        for t in range(d):
            row[i * d + t] += B[t][j, k]
            row[j * d + t] += B[t][k, i]
            row[k * d + t] += B[t][i, j]
        rows.append(row)
    if not rows:
        return PSpace(h, Subspace.full(n * d))
    ker = kernel(np.array(rows, dtype=object))
    return PSpace(h, Subspace.span(list(ker), n * d))


def weak_berger(h, ps=None):
    """L(P(h)) = span of all P(X), and whether it equals h."""
    ps = ps or pspace(h)
    mats = [img for P in ps.elements() for img in P.images() if not is_zero(img)]
    if not mats:
        L = LieAlgebraBasis.zero(h.n, h.form)
    else:
        L = span_algebra(mats, name=f"L(P({h.name}))", form=h.form, check=False)
    return L, L.dim == h.dim


def ric_tilde(P):
    """sum_ij g^ij P(e_i) e_j."""
    G = P.h.form
    Ginv = inverse(G)
    n = P.n
    imgs = P.images()
    out = zeros(n)
    for i in range(n):
        for j in range(n):
            if Ginv[i, j]:
                out = out + imgs[i][:, j] * Ginv[i, j]
    return out


def ric_tilde_of_images(images):
    """sum_i A_i e_i for any list of matrices (standard form)."""
    n = len(images)
    out = zeros(n)
    for i, A in enumerate(images):
        out = out + A[:, i]
    return out


def _frobenius_gram(h):
    d = h.dim
    K = zeros(d, d)
    for a in range(d):
        for b in range(d):
            K[a, b] = sum((x for x in (h[a].T @ h[b]).diagonal()), mpq(0))
    n = h.n
    big = zeros(n * d, n * d)
    for i in range(n):
        big[i * d:(i + 1) * d, i * d:(i + 1) * d] = K
    return big


def split_p0_p1(ps):
    """P0 = ker ric_tilde, P1 = its complement for the entrywise pairing."""
    h = ps.h
    elems = ps.elements()
    if not elems:
        z = Subspace.zero(ps.subspace.ambient_dim)
        return PSpace(h, z), PSpace(h, z)
    rt = np.array([ric_tilde(P) for P in elems], dtype=object).T
    ker = kernel(rt)
    vecs = [sum((c * P.vector() for c, P in zip(k, elems)), zeros(len(elems[0].vector()))) for k in ker]
    P0 = Subspace.span(vecs, ps.subspace.ambient_dim)
    P1 = P0.complement_in(ps.subspace, _frobenius_gram(h))
    return PSpace(h, P0), PSpace(h, P1)


def module_action(xi, P):
    """P_xi(X) = [xi, P(X)] - P(xi X)."""
    imgs = P.images()
    new = []
    for i in range(P.n):
        col = xi[:, i]
        term = zeros(P.n, P.n)
        for j, c in enumerate(col):
            if c:
                term = term + imgs[j] * c
        new.append(bracket(xi, imgs[i]) - term)
    return WeakCurvTensor.from_images(P.h, new)


def wedge(x, y, G=None):
    """Matrix of (x ^ y) z = g(x, z) y - g(y, z) x."""
    G = identity(len(x)) if G is None else G
    x = np.asarray(x, dtype=object).reshape(-1, 1)
    y = np.asarray(y, dtype=object).reshape(-1, 1)
    return y @ (G @ x).T - x @ (G @ y).T


def weyl_component(P):
    """W = P + 1/(n-1) Ric~(P) ^ . , as a map into so(n)."""
    from ..liealg.catalog import so

    n = P.n
    if n < 2:
        raise ShapeMismatch("weyl component needs n >= 2")
    if not P.h.has_identity_form():
        raise ShapeMismatch("weyl component is defined for the standard form")
    r = ric_tilde(P)
    imgs = []
    for i in range(n):
        e = zeros(n)
        e[i] = mpq(1)
        imgs.append(P.image(i) + wedge(r, e) * mpq(1, n - 1))
    return WeakCurvTensor.from_images(so(n), imgs)


# --- algebraic curvature tensors -----------------------------------------

class AlgCurvTensor:
    """R in Hom(Lambda^2 V, gl(V)), stored by its values R(e_a, e_b), a < b."""

    def __init__(self, N, values, form=None):
        self.N = N
        self.form = identity(N) if form is None else form
        self.values = {k: v for k, v in values.items() if not is_zero(v)}

    def value(self, a, b):
        if a == b:
            return zeros(self.N, self.N)
        if a < b:
            return self.values.get((a, b), zeros(self.N, self.N))
        return -self.values.get((b, a), zeros(self.N, self.N))

    def __call__(self, x, y):
        out = zeros(self.N, self.N)
        for (a, b), m in self.values.items():
            c = x[a] * y[b] - x[b] * y[a]
            if c:
                out = out + m * c
        return out

    def is_zero(self):
        return not self.values

    def bianchi_defect(self):
        bad = []
        for a, b, c in combinations(range(self.N), 3):
            s = self.value(a, b)[:, c] + self.value(b, c)[:, a] + self.value(c, a)[:, b]
            if not is_zero(s):
                bad.append((a, b, c))
        return bad

    def pair_symmetry_defect(self):
        """g(R(X,Y)Z, W) = g(R(Z,W)X, Y) on basis vectors."""
        G = self.form
        bad = []
        for a, b in combinations(range(self.N), 2):
            lhs = G @ self.value(a, b)  # lhs[w, z] = g(e_w, R(a,b) e_z)
            for c, d in combinations(range(self.N), 2):
                rhs = G @ self.value(c, d)
                if lhs[d, c] != rhs[b, a]:
                    bad.append(((a, b), (c, d)))
        return bad

    def ricci(self):
        """Ric(X, Y) = tr(Z -> R(Z, X) Y) as an N x N matrix."""
        N = self.N
        out = zeros(N, N)
        for a in range(N):
            for c in range(N):
                m = self.value(c, a)
                for b in range(N):
                    if m[c, b]:
                        out[a, b] += m[c, b]
        return out

    def scalar(self):
        Ginv = inverse(self.form)
        ric = self.ricci()
        return sum((Ginv[a, b] * ric[a, b] for a in range(self.N) for b in range(self.N)), mpq(0))

    def __add__(self, other):
        keys = set(self.values) | set(other.values)
        return AlgCurvTensor(self.N, {k: self.value(*k) + other.value(*k) for k in keys}, self.form)

    def scale(self, c):
        return AlgCurvTensor(self.N, {k: v * mpq(c) for k, v in self.values.items()}, self.form)

    def change_basis(self, B):
        """Components in the basis whose vectors are the columns of B."""
        Binv = inverse(B)
        N = self.N
        vals = {}
        for a, b in combinations(range(N), 2):
            m = self(B[:, a], B[:, b])
            vals[(a, b)] = Binv @ m @ B
        return AlgCurvTensor(N, vals, B.T @ self.form @ B)

    def __eq__(self, other):
        keys = set(self.values) | set(other.values)
        return self.N == other.N and all(is_zero(self.value(*k) - other.value(*k)) for k in keys)

    __hash__ = None


class RSpace:
    def __init__(self, g, subspace, pairs):
        self.g = g
        self.subspace = subspace
        self.pairs = pairs

    @property
    def dim(self):
        return self.subspace.dim

    def elements(self):
        d = self.g.dim
        out = []
        for v in self.subspace.vectors():
            vals = {}
            for p, (a, b) in enumerate(self.pairs):
                vals[(a, b)] = self.g.combine(v[p * d:(p + 1) * d])
            out.append(AlgCurvTensor(self.g.n, vals, self.g.form))
        return out

    def contains(self, R):
        d = self.g.dim
        vec_ = zeros(len(self.pairs) * d)
        for p, (a, b) in enumerate(self.pairs):
            c = self.g.coordinates(R.value(a, b))
            if c is None:
                return False
            vec_[p * d:(p + 1) * d] = c
        return self.subspace.contains(vec_)


def rspace(g):
    """Algebraic curvature tensors with values in g (first Bianchi identity)."""
    N, d = g.n, g.dim
    pairs = list(combinations(range(N), 2))
    pidx = {p: i for i, p in enumerate(pairs)}
    if d == 0:
        return RSpace(g, Subspace.zero(0), pairs)
    rows = []
    for a, b, c in combinations(range(N), 3):
        # R(a,b)e_c + R(b,c)e_a - R(a,c)e_b = 0
        block = zeros(N, len(pairs) * d)
        for (x, y), z, sign in (((a, b), c, 1), ((b, c), a, 1), ((a, c), b, -1)):
            p = pidx[(x, y)]
            for t in range(d):
                col = g[t][:, z]
                for r in range(N):
                    if col[r]:
                        block[r, p * d + t] += sign * col[r]
        rows.extend(block[r] for r in range(N) if not is_zero(block[r]))
    if not rows:
        return RSpace(g, Subspace.full(len(pairs) * d), pairs)
    ker = kernel(np.array(rows, dtype=object))
    return RSpace(g, Subspace.span(list(ker), len(pairs) * d), pairs)


def tau(R, x, h):
    """P(y) = R(y, x) for R in R(h); lands in P(h)."""
    return WeakCurvTensor.from_images(h, [R(_unit(R.N, i), vec(x)) for i in range(R.N)])


def _unit(n, i):
    e = zeros(n)
    e[i] = mpq(1)
    return e
