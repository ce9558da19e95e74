"""Holonomy algebras of Walker metrics from iterated derivatives of curvature.

For an analytic metric the holonomy algebra at a point is spanned by the
values there of R(E_a, E_b) and all of its iterated covariant derivatives.
In a frame E_a with connection matrices Gamma_a these obey

    nabla_a M = E_a(M) + [Gamma_a, M].

We work with Taylor jets at the point.  A field of derivative order k only
needs its jet up to degree K - k to produce the values of orders <= K, so
truncation never loses information below the order cap.
"""

import os
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from .curvspaces.spaces import WeakCurvTensor
from .errors import InvalidSpec, Mismatch, NotInSimN, NotStabilized
from .exact import Polynomial, RationalFunction, walker_vars
from .liealg.core import LieAlgebraBasis, bracket, generated_subalgebra, witt_form
from .liealg.sim import SimSubalgebraSpec, as_subspace, classify, sim_embed
from .linalg import SpanBuilder, Subspace, inverse, is_zero, kernel, zeros
from .walker.components import FrameCalculus, witt_basis_change
from .walker.metric import WalkerMetric

FIRST_DEGREE = 3


def default_max_order(n):
    env = os.environ.get("HOLONOMY_MAX_ORDER")
    if env:
        return int(env)
    N = n + 2
    return 2 + N * (N - 1) // 2


@dataclass
class HolonomySpan:
    point: tuple
    max_order: int
    span: Subspace
    stabilized: bool
    order: int = 0
    classified: SimSubalgebraSpec = None
    generators_by_order: list = field(default_factory=list)

    @property
    def n(self):
        return int(round((self.span.ambient_dim) ** 0.5)) - 2

    @property
    def dim(self):
        return self.span.dim

    def matrices(self):
        N = self.n + 2
        return [v.reshape(N, N) for v in self.span.vectors()]

    def algebra(self, name="hol"):
        N = self.n + 2
        mats = self.matrices()
        if not mats:
            return LieAlgebraBasis.zero(N, witt_form(self.n))
        return LieAlgebraBasis(mats, name=name, form=witt_form(self.n), check=False)

    def is_bracket_closed(self):
        mats = self.matrices()
        return all(
            self.span.contains(bracket(a, b).reshape(-1))
            for i, a in enumerate(mats) for b in mats[i + 1:]
        )


# --- jets ------------------------------------------------------------------

def _jet(f, point, degree):
    if isinstance(f, RationalFunction):
        return f.taylor(point, degree)
    return f.shift(point).truncate(degree)


def _jet_matrix(M, point, degree):
    out = {}
    for r, row in enumerate(M):
        for c, x in enumerate(row):
            if x:
                j = _jet(x, point, degree)
                if j:
                    out[(r, c)] = j
    return out


def _field_vector(F):
    return {(r, c, k): coef for (r, c), p in F.items() for k, coef in p.terms.items()}


def _add_into(acc, key, p):
    cur = acc.get(key)
    s = p if cur is None else cur + p
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _commutator(G, F, N, degree):
    """[G, F] truncated; both sparse {(r, c): Polynomial}."""
    rows_G, rows_F = {}, {}
    for (r, c), p in G.items():
        rows_G.setdefault(r, []).append((c, p))
    for (r, c), p in F.items():
        rows_F.setdefault(r, []).append((c, p))
    out = {}
    for r, entries in rows_G.items():
        for k, g in entries:
            for c, f in rows_F.get(k, ()):
                _add_into(out, (r, c), g.mul_trunc(f, degree))
    for r, entries in rows_F.items():
        for k, f in entries:
            for c, g in rows_G.get(k, ()):
                _add_into(out, (r, c), -f.mul_trunc(g, degree))
    return out


class _JetCalculus:
    def __init__(self, metric, point, degree, frame=None):
        self.fc = frame or FrameCalculus(metric)
        self.N = self.fc.N
        self.vars = metric.vars
        self.point = tuple(mpq(x) for x in point)
        self.degree = degree
        self.frame = [
            [(mu, _jet(c, self.point, degree)) for mu, c in enumerate(row) if c]
            for row in self.fc.frame
        ]
        self.gamma = [_jet_matrix(G, self.point, degree) for G in self.fc.connection]

    def curvature_fields(self):
        return [_jet_matrix(M, self.point, self.degree) for M in self.fc.curvature.values()]

    def derive(self, F, a, degree):
        """Jet of nabla_{E_a} F to ``degree``."""
        out = {}
        for key, p in F.items():
            s = None
            for mu, c in self.frame[a]:
                dp = p.diff(self.vars[mu])
                if dp:
                    t = c.mul_trunc(dp, degree)
                    s = t if s is None else s + t
            if s:
                out[key] = s
        for key, p in _commutator(self.gamma[a], F, self.N, degree).items():
            _add_into(out, key, p)
        return out


def _independent(fields):
    sb = SpanBuilder()
    return [F for F in fields if F and sb.add(_field_vector(F))]


def _value(F, N):
    M = zeros(N, N)
    for (r, c), p in F.items():
        M[r, c] = p.constant_term()
    return M


# --- the span ---------------------------------------------------------------

def _run(metric, point, K, C, Cinv, frame):
    """Values up to order K; returns per-order lists of Witt-basis matrices."""
    jc = _JetCalculus(metric, point, K, frame)
    N = jc.N
    fields = _independent(jc.curvature_fields())
    by_order = []
    for k in range(K + 1):
        by_order.append([Cinv @ _value(F, N) @ C for F in fields])
        if k == K:
            break
        D = K - k - 1
        fields = _independent(
            [jc.derive(F, a, D) for F in fields for a in range(N)]
        )
        if not fields:
            by_order.extend([] for _ in range(K - k))
            break
    return by_order


def holonomy_span(metric, point, max_order=None, frame=None):
    """Span of the curvature operators and their derivatives at ``point``."""
    n = metric.n
    N = n + 2
    if max_order is None:
        max_order = default_max_order(n)
    point = tuple(mpq(x) for x in point)
    frame = frame or FrameCalculus(metric)
    C = witt_basis_change(metric, point)
    Cinv = inverse(C)
    if not frame.curvature:
        sp = Subspace.zero(N * N)
        return HolonomySpan(point, max_order, sp, True, 0, generators_by_order=[[]])
    full = as_subspace(sim_embed(SimSubalgebraSpec(1, _so(n))).matrices, N) if n else None
    K = min(FIRST_DEGREE, max_order)
    while True:
        by_order = _run(metric, point, K, C, Cinv, frame)
        sb = SpanBuilder()
        basis = []
        dims = []
        for k, mats in enumerate(by_order):
            for M in mats:
                _check_sim(M, n)
                if sb.add({i: x for i, x in enumerate(M.reshape(-1)) if x}):
                    basis.append(M)
            dims.append(len(basis))
            span = Subspace.span([b.reshape(-1) for b in basis], N * N) if basis else Subspace.zero(N * N)
            hs = HolonomySpan(point, max_order, span, False, k, generators_by_order=by_order[: k + 1])
            if full is not None and span == full:
                hs.stabilized = True
                return hs
            if k >= 2 and dims[k] == dims[k - 1] == dims[k - 2] and hs.is_bracket_closed():
                hs.stabilized = True
                return hs
        if K >= max_order:
            raise NotStabilized(
                f"span did not stabilize up to order {K} (dimension {len(basis)})", hs
            )
        K = min(K + 2, max_order)


def _so(n):
    from .liealg.catalog import so

    return so(n)


def _check_sim(M, n):
    N = n + 2
    for i in range(1, N):
        if M[i, 0]:
            raise NotInSimN("holonomy generator does not preserve the null line")


def classify_span(hs):
    hs.classified = classify(hs.matrices(), hs.n)
    return hs.classified


# --- metrics realizing a given algebra ---------------------------------------

@dataclass
class Thm18Input:
    """Data for the metric with prescribed holonomy.

    ``phi`` is a functional on h (coefficients on its basis); ``psi`` an
    (n - m) x dim h matrix, as in SimSubalgebraSpec.
    """

    h: LieAlgebraBasis
    P: WeakCurvTensor
    type_tag: int
    phi: object = None
    m: int = None
    psi: object = None

    def __post_init__(self):
        self.spec = SimSubalgebraSpec(self.type_tag, self.h, phi=self.phi, m=self.m, psi=self.psi)
        if self.P.h is not self.h and not self.P.h.same_algebra(self.h):
            raise InvalidSpec("P must take values in h")
        if self.P.cyclic_defect():
            raise InvalidSpec("P does not satisfy the cyclic identity")
        imgs = [M for M in self.P.images() if not is_zero(M)]
        if self.h.dim:
            if not imgs or not generated_subalgebra(imgs).same_algebra(self.h):
                raise InvalidSpec("the images of P do not generate h")
        elif imgs:
            raise InvalidSpec("P must vanish for h = 0")
        self.m0  # validates the adapted basis

    @property
    def n(self):
        return self.h.n

    @property
    def m0(self):
        """Number of coordinates moved by h; they must come first."""
        n = self.n
        if not self.h.dim:
            return 0
        stacked = np.concatenate([M for M in self.h], axis=0)
        trivial = Subspace.span(list(kernel(stacked)), n)
        m0 = n - trivial.dim
        unit = [np.array([mpq(int(i == j)) for i in range(n)], dtype=object) for j in range(m0, n)]
        if trivial != Subspace.span(unit, n):
            raise InvalidSpec("the trivial subspace of h must be spanned by the last coordinates")
        return m0

    def phi_values(self):
        return [
            sum((a * b for a, b in zip(self.spec.phi, self.h.coordinates(M))), mpq(0))
            for M in self.P.images()
        ]

    def psi_values(self):
        """psi_ij with psi(P(e_i)) = -sum_{j>m} psi_ij e_j, as an n x (n-m) grid."""
        out = zeros(self.n, self.n - self.spec.m)
        for i, M in enumerate(self.P.images()):
            out[i, :] = -(self.spec.psi @ self.h.coordinates(M))
        return out


def realization_A(P):
    """A_i = 1/3 (P^i_jk + P^i_kj) x^j x^k with P(e_k) e_j = P^i_jk e_i."""
    n = P.n
    vars = walker_vars(n)
    xs = [Polynomial.var(vars, f"x{i + 1}") for i in range(n)]
    imgs = P.images()
    A = []
    for i in range(n):
        s = Polynomial(vars, {})
        for j in range(n):
            for k in range(n):
                c = imgs[k][i, j] + imgs[j][i, k]
                if c:
                    s = s + (xs[j] * xs[k]).scale(c / 3)
        A.append(s)
    return A


def _trivial_dim(h):
    """Dimension of the subspace annihilated by every element of h."""
    stacked = np.concatenate(list(h), axis=0)
    return len(kernel(stacked))


def build_metric_thm18(inp):
    n = inp.n
    vars = walker_vars(n)
    xs = [Polynomial.var(vars, f"x{i + 1}") for i in range(n)]
    zero = Polynomial(vars, {})
    A = realization_A(inp.P)
    m0 = inp.m0
    t = inp.type_tag
    top = inp.spec.m if t == 4 else n
    H = zero
    for i in range(m0, top):
        H = H + xs[i] * xs[i]
    v = Polynomial.var(vars, "v")
    if t == 1:
        H = H + v * v
    elif t == 3:
        for i, c in enumerate(inp.phi_values()):
            if c:
                H = H + (v * xs[i]).scale(2 * c)
    elif t == 4:
        # with psi(P(e_i)) = -psi_ij e_j the translation part of R(X_i, q)(0)
        # is T(e_i) = 1/2 d_i d_j H e_j, so the psi term enters H with a minus
        m = inp.spec.m
        psi = -inp.psi_values()
        for i in range(n):
            for j in range(m, n):
                if psi[i, j - m]:
                    H = H + (xs[i] * xs[j]).scale(2 * psi[i, j - m])
    h = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    return WalkerMetric(n, h, A, H)


@dataclass
class RealizationReport:
    spec: SimSubalgebraSpec
    expected: Subspace
    computed: HolonomySpan
    classified: SimSubalgebraSpec

    @property
    def ok(self):
        return self.expected == self.computed.span


def verify_realization(inp, max_order=None):
    """Build the metric, compute its holonomy at 0 and compare with the target."""
    g = build_metric_thm18(inp)
    N = inp.n + 2
    hs = holonomy_span(g, (0,) * (N), max_order)
    expected = as_subspace(sim_embed(inp.spec).matrices, N)
    if expected != hs.span:
        raise Mismatch(
            f"computed dimension {hs.dim}, expected {expected.dim}",
            missing=_difference(expected, hs.span),
            extra=_difference(hs.span, expected),
        )
    spec = classify_span(hs)
    return RealizationReport(inp.spec, expected, hs, spec)


def _difference(a, b):
    return [v for v in a.vectors() if not b.contains(v)]
