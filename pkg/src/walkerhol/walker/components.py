"""Curvature of a Walker metric in the null frame p, X_i, q.

The frame is p = d_v, X_i = d_i - A_i d_v, q = d_u - H/2 d_v.  From the
frame contractions we read off

    lam = g(R(p,q)p, q),  v_i = g(R(p,q)X_i, q),
    h_il P^l_jk = g(R(X_k,q)X_j, X_i),  T_ij = -g(R(X_i,q)q, X_j),
    R0_ijkl = g(R(X_k,X_l)X_j, X_i),

and compare them with closed formulas in terms of h, A and H.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np
from gmpy2 import mpq

from ..curvspaces.spaces import AlgCurvTensor
from ..errors import NonRationalFrame
from ..exact import RationalFunction
from ..linalg import identity, inverse, zeros
from .geometry import Geometry

HALF = mpq(1, 2)
QUARTER = mpq(1, 4)


def geometry_of(metric):
    """Coordinate calculus for the full metric, with the closed-form inverse."""
    return Geometry(metric.matrix(), metric.vars, metric.inverse_matrix())


def screen_geometry(metric):
    """Calculus of the family h(u) in the coordinates x1..xn (u is a parameter)."""
    coords = metric.vars[1:-1]
    return Geometry(metric.h, coords, metric.h_inverse())


def _rational_sqrt(x):
    from ..liealg.catalog import _rational_sqrt as rs

    return rs(x)


def orthonormalizer(h0):
    """B with B^T h0 B = I over Q, via LDL^T; NonRationalFrame if impossible."""
    n = h0.shape[0]
    L = identity(n)
    D = zeros(n)
    for j in range(n):
        D[j] = h0[j, j] - sum((L[j, k] ** 2 * D[k] for k in range(j)), mpq(0))
        if D[j] <= 0:
            raise NonRationalFrame("screen metric is not positive definite at the point")
        for i in range(j + 1, n):
            L[i, j] = (h0[i, j] - sum((L[i, k] * L[j, k] * D[k] for k in range(j)), mpq(0))) / D[j]
    roots = []
    for d in D:
        r = _rational_sqrt(d)
        if r is None:
            raise NonRationalFrame(
                f"no rational orthonormal frame: pivot {d} is not a rational square"
            )
        roots.append(r)
    Linv_T = inverse(L).T
    B = zeros(n, n)
    for i in range(n):
        for j in range(n):
            B[i, j] = Linv_T[i, j] / roots[j]
    return B


class FrameCalculus:
    """Frame connection and frame curvature of a Walker metric, symbolically."""

    def __init__(self, metric, geometry=None):
        self.metric = metric
        self.geo = geometry or geometry_of(metric)
        self.N = metric.n + 2
        self.frame = metric.frame()
        self.zero = metric.rf(0)

    def to_frame(self, w):
        """Frame coefficients of a coordinate vector w = (w^v, w^x.., w^u)."""
        m = self.metric
        n, N = m.n, self.N
        out = list(w)
        s = w[0]
        for i in range(n):
            if w[1 + i] and m.A[i]:
                s = s + m.A[i] * w[1 + i]
        if w[N - 1] and m.H:
            s = s + m.H * w[N - 1] * HALF
        out[0] = s
        return out

    def derivative(self, f, a):
        """E_a(f) for the frame vector E_a."""
        s = self.zero
        for mu, c in enumerate(self.frame[a]):
            if c:
                df = self.geo.d(f, mu)
                if df:
                    s = s + c * df
        return s

    @cached_property
    def connection(self):
        """Gamma[a] is the matrix (Gamma^c_ba)_{c,b} with nabla_{E_a} E_b = Gamma^c_ba E_c."""
        N = self.N
        geo = self.geo
        out = []
        for a in range(N):
            Ea = self.frame[a]
            mat_ = [[self.zero] * N for _ in range(N)]
            for b in range(N):
                Eb = self.frame[b]
                w = []
                for nu in range(N):
                    s = self.derivative(Eb[nu], a) if Eb[nu] else self.zero
                    for mu in range(N):
                        if not Ea[mu]:
                            continue
                        for lam in range(N):
                            if Eb[lam]:
                                gm = geo.gamma(nu, mu, lam)
                                if gm:
                                    s = s + Ea[mu] * Eb[lam] * gm
                    w.append(s)
                wf = self.to_frame(w)
                for c in range(N):
                    mat_[c][b] = wf[c]
            out.append(mat_)
        return out

    def contract(self, a, b, c, d):
        """g(R(E_c, E_d) E_b, E_a) from the covariant coordinate tensor."""
        F = self.frame
        s = self.zero
        for al, xa in enumerate(F[a]):
            if not xa:
                continue
            for be, xb in enumerate(F[b]):
                if not xb:
                    continue
                for ga, xc in enumerate(F[c]):
                    if not xc:
                        continue
                    for de, xd in enumerate(F[d]):
                        if not xd:
                            continue
                        r = self.geo.R(al, be, ga, de)
                        if r:
                            s = s + r * xa * xb * xc * xd
        return s

    @cached_property
    def curvature(self):
        """{(c, d): M} with M[a][b] the E_a-coefficient of R(E_c, E_d) E_b, c < d."""
        N = self.N
        out = {}
        for c, d in combinations(range(N), 2):
            M = [[self.zero] * N for _ in range(N)]
            nonzero = False
            for b in range(N):
                w = [self.zero] * N
                for al in range(N):
                    s = self.zero
                    for be, xb in enumerate(self.frame[b]):
                        if not xb:
                            continue
                        for ga, xc in enumerate(self.frame[c]):
                            if not xc:
                                continue
                            for de, xd in enumerate(self.frame[d]):
                                if xd:
                                    r = self.geo.R_up(al, be, ga, de)
                                    if r:
                                        s = s + r * xb * xc * xd
                    w[al] = s
                wf = self.to_frame(w)
                for a in range(N):
                    M[a][b] = wf[a]
                    nonzero = nonzero or bool(wf[a])
            if nonzero:
                out[(c, d)] = M
        return out


@dataclass
class CurvatureComponents:
    """lam, v, P, T, R0 as rational functions, relative to the frame X_i."""

    n: int
    lam: RationalFunction
    v_low: list  # v_i = g(v, X_i)
    vvec: list  # components of v on X_j
    P_low: dict  # (i, j, k) -> h_il P^l_jk
    P: dict  # (l, j, k) -> P^l_jk
    T: list  # T_ij
    R0: dict  # (i, j, k, l), i < j, k < l -> R0_ijkl
    notes: list = field(default_factory=list)

    def is_zero_P(self):
        return not self.P


def extract_components(metric, frame=None):
    """Components from frame contractions of the coordinate curvature."""
    fc = frame or FrameCalculus(metric)
    n = metric.n
    N = n + 2
    p, q = 0, N - 1
    X = [1 + i for i in range(n)]
    k = metric.h_inverse()
    zero = metric.rf(0)
    lam = fc.contract(q, p, p, q)
    v_low = [fc.contract(q, X[i], p, q) for i in range(n)]
    vvec = []
    for j in range(n):
        s = zero
        for i in range(n):
            if k[j][i] and v_low[i]:
                s = s + k[j][i] * v_low[i]
        vvec.append(s)
    P_low = {}
    for i in range(n):
        for j in range(n):
            for kk in range(n):
                val = fc.contract(X[i], X[j], X[kk], q)
                if val:
                    P_low[(i, j, kk)] = val
    P = _raise_first(P_low, k, n, zero)
    T = [[-fc.contract(X[j], q, X[i], q) for j in range(n)] for i in range(n)]
    R0 = {}
    for i, j in combinations(range(n), 2):
        for a, b in combinations(range(n), 2):
            val = fc.contract(X[i], X[j], X[a], X[b])
            if val:
                R0[(i, j, a, b)] = val
    return CurvatureComponents(n, lam, v_low, vvec, P_low, P, T, R0)


def _raise_first(low, k, n, zero):
    out = {}
    for l in range(n):
        for j in range(n):
            for kk in range(n):
                s = zero
                for i in range(n):
                    if k[l][i]:
                        x = low.get((i, j, kk))
                        if x:
                            s = s + k[l][i] * x
                if s:
                    out[(l, j, kk)] = s
    return out


def structural_defects(metric, frame=None):
    """Frame contractions that must vanish for any Walker metric."""
    fc = frame or FrameCalculus(metric)
    n = metric.n
    N = n + 2
    p, q = 0, N - 1
    bad = []
    # R(p, .) = 0 on E, and R(., .) p is proportional to p
    for a in range(N):
        for b in range(N):
            for i in range(n):
                if fc.contract(a, b, p, 1 + i):
                    bad.append(("R(p,X)", a, b, i))
    for c, d in combinations(range(N), 2):
        for a in range(1, N):
            if a == q:
                continue
            if fc.contract(a, p, c, d):
                bad.append(("R(.,.)p", a, c, d))
    return bad


def formula_components(metric, screen=None):
    """lam, v_low, P_low and T from the closed formulas in h, A, H.

    Covariant derivatives are those of h(u); dots are d/du.
    """
    m = metric
    n = m.n
    xs = m.vars[1:-1]
    sg = screen or screen_geometry(m)
    k = m.h_inverse()
    zero = m.rf(0)
    H, A, h = m.H, m.A, m.h
    Hv = H.diff("v")
    Hvv = Hv.diff("v")
    lam = Hvv * HALF
    v_low = [(Hv.diff(xs[i]) - A[i] * Hvv) * HALF for i in range(n)]

    def gam(l, a, b):
        return sg.gamma(l, a, b)

    F = [[A[j].diff(xs[i]) - A[i].diff(xs[j]) for j in range(n)] for i in range(n)]
    hd = [[h[i][j].diff("u") for j in range(n)] for i in range(n)]
    hdd = [[hd[i][j].diff("u") for j in range(n)] for i in range(n)]
    Ad = [a.diff("u") for a in A]

    def cov2(S, kk, i, j):
        # nabla_k S_ij for a 2-tensor S
        s = S[i][j].diff(xs[kk])
        for l in range(n):
            g1 = gam(l, kk, i)
            if g1 and S[l][j]:
                s = s - g1 * S[l][j]
            g2 = gam(l, kk, j)
            if g2 and S[i][l]:
                s = s - g2 * S[i][l]
        return s

    def cov1(w, i, j):
        # nabla_i w_j
        s = w[j].diff(xs[i])
        for l in range(n):
            g1 = gam(l, i, j)
            if g1 and w[l]:
                s = s - g1 * w[l]
        return s

    P_low = {}
    for i in range(n):
        for j in range(n):
            for kk in range(n):
                s = (cov2(hd, kk, i, j) - cov2(F, kk, i, j)) * HALF
                for l in range(n):
                    gd = gam(l, kk, j).diff("u")
                    if gd and h[l][i]:
                        s = s - gd * h[l][i]
                if s:
                    P_low[(i, j, kk)] = s
    dH = [H.diff(x) for x in xs]
    T = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            hess = dH[j].diff(xs[i])
            for l in range(n):
                g1 = gam(l, i, j)
                if g1 and dH[l]:
                    hess = hess - g1 * dH[l]
            s = hess * HALF
            quad = zero
            for a in range(n):
                for b in range(n):
                    if k[a][b]:
                        x = (F[i][a] + hd[i][a]) * (F[j][b] + hd[j][b])
                        if x:
                            quad = quad + x * k[a][b]
            s = s - quad * QUARTER
            if Hv:
                s = s - Hv * (cov1(A, i, j) + cov1(A, j, i)) * QUARTER
            s = s - (A[i] * Hv.diff(xs[j]) + A[j] * Hv.diff(xs[i])) * HALF
            s = s - (cov1(Ad, i, j) + cov1(Ad, j, i)) * HALF
            s = s + A[i] * A[j] * Hvv * HALF
            s = s + hdd[i][j] * HALF
            s = s + hd[i][j] * Hv * QUARTER
            T[i][j] = s
    return lam, v_low, P_low, T


def compare_with_formulas(metric, comps=None):
    """Names of the components where the two routes disagree."""
    comps = comps or extract_components(metric)
    lam, v_low, P_low, T = formula_components(metric)
    n = metric.n
    bad = []
    if lam != comps.lam:
        bad.append("lambda")
    if any(a != b for a, b in zip(v_low, comps.v_low)):
        bad.append("v")
    keys = set(P_low) | set(comps.P_low)
    zero = metric.rf(0)
    if any(P_low.get(key, zero) != comps.P_low.get(key, zero) for key in keys):
        bad.append("P")
    if any(T[i][j] != comps.T[i][j] for i in range(n) for j in range(n)):
        bad.append("T")
    return bad


def frame_tensor_at(metric, point, frame=None):
    """AlgCurvTensor of the frame curvature at ``point`` (basis p, X_i, q)."""
    fc = frame or FrameCalculus(metric)
    N = fc.N
    vals = {}
    for (c, d), M in fc.curvature.items():
        vals[(c, d)] = np.array([[x.evaluate(point) for x in row] for row in M], dtype=object)
    gram = metric.frame_gram()
    G = np.array([[x.evaluate(point) for x in row] for row in gram], dtype=object)
    return AlgCurvTensor(N, vals, G)


def witt_basis_change(metric, point):
    """Block matrix diag(1, B, 1) turning the frame at ``point`` into a Witt basis."""
    n = metric.n
    h0 = np.array([[x.evaluate(point) for x in row] for row in metric.h], dtype=object)
    B = orthonormalizer(h0)
    C = identity(n + 2)
    C[1:n + 1, 1:n + 1] = B
    return C


def witt_tensor_at(metric, point, frame=None):
    """Curvature at ``point`` in a Witt basis adapted to the frame."""
    R = frame_tensor_at(metric, point, frame)
    return R.change_basis(witt_basis_change(metric, point))


def screen_curvature_defect(metric, comps=None):
    """R0 from the frame against the curvature of the family h(u)."""
    comps = comps or extract_components(metric)
    sg = screen_geometry(metric)
    n = metric.n
    bad = []
    zero = metric.rf(0)
    for i, j in combinations(range(n), 2):
        for a, b in combinations(range(n), 2):
            if comps.R0.get((i, j, a, b), zero) != sg.R(i, j, a, b):
                bad.append((i, j, a, b))
    return bad


def T_endomorphism(metric, comps=None):
    """The matrix of T as an endomorphism of the screen, h^{-1} T."""
    comps = comps or extract_components(metric)
    n = metric.n
    k = metric.h_inverse()
    zero = metric.rf(0)
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = zero
            for l in range(n):
                if k[i][l] and comps.T[l][j]:
                    s = s + k[i][l] * comps.T[l][j]
            out[i][j] = s
    return out


def det_T(metric, comps=None):
    from .metric import rf_det

    return rf_det(T_endomorphism(metric, comps))


def trace_T(metric, comps=None):
    E = T_endomorphism(metric, comps)
    s = metric.rf(0)
    for i in range(metric.n):
        s = s + E[i][i]
    return s


def _R0_value(R0, i, j, a, b, zero):
    sign = 1
    if i > j:
        i, j, sign = j, i, -sign
    if a > b:
        a, b, sign = b, a, -sign
    if i == j or a == b:
        return zero
    val = R0.get((i, j, a, b), zero)
    return val if sign > 0 else -val


def ricci_from_components(metric, comps=None):
    """Ric(E_a, E_b) assembled from lam, v, P, T and R0."""
    comps = comps or extract_components(metric)
    n = metric.n
    N = n + 2
    q = N - 1
    k = metric.h_inverse()
    zero = metric.rf(0)
    ric = [[zero] * N for _ in range(N)]
    ric[0][q] = ric[q][0] = comps.lam
    ric[q][q] = -trace_T(metric, comps)
    for x in range(n):
        # g(X, v - sum_ij h^ij P(X_i) X_j)
        s = comps.v_low[x]
        for i in range(n):
            for j in range(n):
                if k[i][j]:
                    val = comps.P_low.get((x, j, i))
                    if val:
                        s = s - k[i][j] * val
        ric[1 + x][q] = ric[q][1 + x] = s
    for b in range(n):
        for d in range(n):
            s = zero
            for a in range(n):
                for c in range(n):
                    if k[a][c]:
                        val = _R0_value(comps.R0, c, b, a, d, zero)
                        if val:
                            s = s + k[a][c] * val
            ric[1 + b][1 + d] = s
    return ric


def frame_ricci(metric, geometry=None):
    """Coordinate Ricci tensor evaluated on the frame."""
    geo = geometry or geometry_of(metric)
    F = metric.frame()
    N = metric.n + 2
    zero = metric.rf(0)
    out = [[zero] * N for _ in range(N)]
    ric = geo.ricci
    for a in range(N):
        for b in range(N):
            s = zero
            for mu, x in enumerate(F[a]):
                if not x:
                    continue
                for nu, y in enumerate(F[b]):
                    if y and ric[mu][nu]:
                        s = s + x * y * ric[mu][nu]
            out[a][b] = s
    return out


def ricci_defect(metric, comps=None, geometry=None):
    """Frame entries where the two Ricci computations disagree."""
    A = ricci_from_components(metric, comps)
    B = frame_ricci(metric, geometry)
    N = metric.n + 2
    return [(a, b) for a in range(N) for b in range(N) if A[a][b] != B[a][b]]


def frame_identity_defect(metric):
    """Entries of the frame Gram matrix that differ from the Walker pattern."""
    G = metric.frame_gram()
    n, N = metric.n, metric.n + 2
    bad = []
    for a in range(N):
        for b in range(N):
            if 1 <= a <= n and 1 <= b <= n:
                want = metric.h[a - 1][b - 1]
            else:
                want = metric.rf(1 if {a, b} == {0, N - 1} else 0)
            if G[a][b] != want:
                bad.append((a, b))
    return bad


def recurrence_defect(metric, geometry=None):
    """Components where nabla d_v differs from 1/2 d_vH du (x) d_v."""
    geo = geometry or geometry_of(metric)
    N = metric.n + 2
    half_Hv = metric.H.diff("v") * HALF
    bad = []
    for mu in range(N):
        for c in range(N):
            # nabla_mu d_v = Gamma^c_{mu v} d_c
            want = half_Hv if (c == 0 and mu == N - 1) else metric.rf(0)
            if geo.gamma(c, mu, 0) != want:
                bad.append((mu, c))
    return bad
