"""Coordinate tensor calculus for a metric with rational-function entries.

Conventions: R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y];
R(d_c, d_d) d_b = R^a_bcd d_a;  R_abcd = g_ae R^e_bcd = g(R(d_c, d_d) d_b, d_a);
Ric_bd = R^a_bad = Ric(d_b, d_d) with Ric(X, Y) = tr(Z -> R(Z, X) Y).

Tensors are sparse dicts of nonzero RationalFunctions.  Antisymmetric index
pairs are stored with the smaller index first.
"""

from functools import cached_property
from itertools import combinations

from gmpy2 import mpq

from ..errors import DegenerateMetric
from ..exact import RationalFunction
from .metric import rf_inverse


def _add(d, key, val):
    if not val:
        return
    cur = d.get(key)
    s = val if cur is None else cur + val
    if s:
        d[key] = s
    else:
        d.pop(key, None)


class Geometry:
    """Levi-Civita calculus for ``g`` (list of lists) in the coordinates ``coords``.

    ``coords`` names the variables that are coordinate directions; any other
    variables of the rational functions are treated as parameters.
    """

    def __init__(self, g, coords, ginv=None):
        self.g = g
        self.coords = tuple(coords)
        self.N = len(coords)
        self.vars = g[0][0].vars
        self.zero = RationalFunction.const(self.vars, 0)
        if ginv is not None:
            self.__dict__["ginv"] = ginv

    def d(self, f, a):
        return f.diff(self.coords[a])

    @cached_property
    def ginv(self):
        try:
            return rf_inverse(self.g)
        except DegenerateMetric:
            raise DegenerateMetric("metric is degenerate") from None

    # connection ------------------------------------------------------------
    @cached_property
    def dg(self):
        """{(a, b, c): d_c g_ab} for a <= b."""
        out = {}
        for a in range(self.N):
            for b in range(a, self.N):
                if not self.g[a][b]:
                    continue
                for c in range(self.N):
                    x = self.d(self.g[a][b], c)
                    if x:
                        out[(a, b, c)] = x
        return out

    def _dg(self, a, b, c):
        return self.dg.get((a, b, c) if a <= b else (b, a, c), self.zero)

    @cached_property
    def christoffel_lower(self):
        """{(c, a, b): Gamma_{c,ab}} = 1/2 (d_a g_cb + d_b g_ca - d_c g_ab), a <= b."""
        out = {}
        half = mpq(1, 2)
        for c in range(self.N):
            for a in range(self.N):
                for b in range(a, self.N):
                    s = self._dg(c, b, a) + self._dg(c, a, b) - self._dg(a, b, c)
                    if s:
                        out[(c, a, b)] = s * half
        return out

    @cached_property
    def christoffel(self):
        """{(c, a, b): Gamma^c_ab}, a <= b."""
        out = {}
        gi = self.ginv
        for (d, a, b), val in self.christoffel_lower.items():
            for c in range(self.N):
                if gi[c][d]:
                    _add(out, (c, a, b), gi[c][d] * val)
        return out

    def gamma(self, c, a, b):
        return self.christoffel.get((c, a, b) if a <= b else (c, b, a), self.zero)

    @cached_property
    def _gamma_by_upper(self):
        """{c: {(a, b): Gamma^c_ab}} with both orders of (a, b)."""
        out = {}
        for (c, a, b), val in self.christoffel.items():
            out.setdefault(c, {})[(a, b)] = val
            out[c][(b, a)] = val
        return out

    # curvature ------------------------------------------------------------------
    @cached_property
    def riemann_up(self):
        """{(a, b, c, d): R^a_bcd}, c < d."""
        N = self.N
        G = self._gamma_by_upper
        dG = {}
        for (a, x, y), val in self.christoffel.items():
            for k in range(N):
                t = self.d(val, k)
                if t:
                    dG[(a, x, y, k)] = t

        def dgam(a, x, y, k):
            return dG.get((a, x, y, k) if x <= y else (a, y, x, k))

        out = {}
        for a in range(N):
            Ga = G.get(a, {})
            for b in range(N):
                for c, d in combinations(range(N), 2):
                    s = self.zero
                    t = dgam(a, d, b, c)
                    if t is not None:
                        s = s + t
                    t = dgam(a, c, b, d)
                    if t is not None:
                        s = s - t
                    for e in range(N):
                        x = Ga.get((c, e))
                        if x is not None:
                            y = G.get(e, {}).get((d, b))
                            if y is not None:
                                s = s + x * y
                        x = Ga.get((d, e))
                        if x is not None:
                            y = G.get(e, {}).get((c, b))
                            if y is not None:
                                s = s - x * y
                    if s:
                        out[(a, b, c, d)] = s
        return out

    def R_up(self, a, b, c, d):
        if c == d:
            return self.zero
        if c < d:
            return self.riemann_up.get((a, b, c, d), self.zero)
        return -self.riemann_up.get((a, b, d, c), self.zero)

    @cached_property
    def riemann(self):
        """Fully covariant {(a, b, c, d): R_abcd} with a < b and c < d."""
        N = self.N
        out = {}
        by_bcd = {}
        for (e, b, c, d), val in self.riemann_up.items():
            by_bcd.setdefault((b, c, d), []).append((e, val))
        for (b, c, d), lst in by_bcd.items():
            for a in range(b):
                s = self.zero
                for e, val in lst:
                    if self.g[a][e]:
                        s = s + self.g[a][e] * val
                if s:
                    out[(a, b, c, d)] = s
        return out

    def R(self, a, b, c, d):
        if a == b or c == d:
            return self.zero
        sign = 1
        if a > b:
            a, b, sign = b, a, -sign
        if c > d:
            c, d, sign = d, c, -sign
        val = self.riemann.get((a, b, c, d))
        if val is None:
            return self.zero
        return val if sign > 0 else -val

    @cached_property
    def ricci(self):
        """Ric_bd = R^a_bad as an N x N list."""
        N = self.N
        out = [[self.zero] * N for _ in range(N)]
        for (a, b, c, d), val in self.riemann_up.items():
            if c == a:
                out[b][d] = out[b][d] + val
            elif d == a:
                out[b][c] = out[b][c] - val
        return out

    @cached_property
    def scalar(self):
        s = self.zero
        gi = self.ginv
        ric = self.ricci
        for a in range(self.N):
            for b in range(self.N):
                if gi[a][b] and ric[a][b]:
                    s = s + gi[a][b] * ric[a][b]
        return s

    @cached_property
    def weyl(self):
        """Fully covariant conformal curvature, keys as in ``riemann``."""
        N = self.N
        if N < 3:
            return {}
        g, ric, s = self.g, self.ricci, self.scalar
        c1 = mpq(1, N - 2)
        c2 = mpq(1, (N - 1) * (N - 2))
        out = {}
        pairs = list(combinations(range(N), 2))
        for a, b in pairs:
            for c, d in pairs:
                t = self.R(a, b, c, d)
                k = g[a][c] * ric[b][d] - g[a][d] * ric[b][c] - g[b][c] * ric[a][d] + g[b][d] * ric[a][c]
                t = t - k * c1
                if s:
                    t = t + s * (g[a][c] * g[b][d] - g[a][d] * g[b][c]) * c2
                if t:
                    out[(a, b, c, d)] = t
        return out

    # covariant derivatives of curvature ------------------------------------------
    @cached_property
    def nabla_R(self):
        """{(e, a, b, c, d): (nabla_e R)_abcd}, a < b, c < d."""
        N = self.N
        pairs = list(combinations(range(N), 2))
        G = self._gamma_by_upper
        # lowered-index view: Gam[e][x] = list of (f, Gamma^f_ex)
        lists = {}
        for f, m in G.items():
            for (e, x), val in m.items():
                lists.setdefault((e, x), []).append((f, val))
        out = {}
        for e in range(N):
            for a, b in pairs:
                for c, d in pairs:
                    base = self.riemann.get((a, b, c, d))
                    s = self.d(base, e) if base is not None else self.zero
                    for f, val in lists.get((e, a), ()):
                        r = self.R(f, b, c, d)
                        if r:
                            s = s - val * r
                    for f, val in lists.get((e, b), ()):
                        r = self.R(a, f, c, d)
                        if r:
                            s = s - val * r
                    for f, val in lists.get((e, c), ()):
                        r = self.R(a, b, f, d)
                        if r:
                            s = s - val * r
                    for f, val in lists.get((e, d), ()):
                        r = self.R(a, b, c, f)
                        if r:
                            s = s - val * r
                    if s:
                        out[(e, a, b, c, d)] = s
        return out

    def nR(self, e, a, b, c, d):
        if a == b or c == d:
            return self.zero
        sign = 1
        if a > b:
            a, b, sign = b, a, -sign
        if c > d:
            c, d, sign = d, c, -sign
        val = self.nabla_R.get((e, a, b, c, d))
        if val is None:
            return self.zero
        return val if sign > 0 else -val

    @cached_property
    def nabla2_R(self):
        """{(f, e, a, b, c, d): (nabla_f nabla R)_eabcd}."""
        N = self.N
        pairs = list(combinations(range(N), 2))
        G = self._gamma_by_upper
        lists = {}
        for k, m in G.items():
            for (x, y), val in m.items():
                lists.setdefault((x, y), []).append((k, val))
        out = {}
        for f in range(N):
            for e in range(N):
                for a, b in pairs:
                    for c, d in pairs:
                        base = self.nabla_R.get((e, a, b, c, d))
                        s = self.d(base, f) if base is not None else self.zero
                        for k, val in lists.get((f, e), ()):
                            r = self.nR(k, a, b, c, d)
                            if r:
                                s = s - val * r
                        for k, val in lists.get((f, a), ()):
                            r = self.nR(e, k, b, c, d)
                            if r:
                                s = s - val * r
                        for k, val in lists.get((f, b), ()):
                            r = self.nR(e, a, k, c, d)
                            if r:
                                s = s - val * r
                        for k, val in lists.get((f, c), ()):
                            r = self.nR(e, a, b, k, d)
                            if r:
                                s = s - val * r
                        for k, val in lists.get((f, d), ()):
                            r = self.nR(e, a, b, c, k)
                            if r:
                                s = s - val * r
                        if s:
                            out[(f, e, a, b, c, d)] = s
        return out

    # identities --------------------------------------------------------------
    def metric_compatibility_defect(self):
        """Index triples (c, a, b) where d_c g_ab - Gamma^d_ca g_db - Gamma^d_cb g_ad != 0."""
        N = self.N
        bad = []
        for c in range(N):
            for a in range(N):
                for b in range(a, N):
                    s = self._dg(a, b, c)
                    for d in range(N):
                        if self.g[d][b]:
                            x = self.gamma(d, c, a)
                            if x:
                                s = s - x * self.g[d][b]
                        if self.g[a][d]:
                            x = self.gamma(d, c, b)
                            if x:
                                s = s - x * self.g[a][d]
                    if s:
                        bad.append((c, a, b))
        return bad

    def bianchi1_defect(self):
        """R_abcd + R_acdb + R_adbc over all index quadruples."""
        N = self.N
        bad = []
        for a in range(N):
            for b, c, d in combinations(range(N), 3):
                s = self.R(a, b, c, d) + self.R(a, c, d, b) + self.R(a, d, b, c)
                if s:
                    bad.append((a, b, c, d))
        return bad

    def pair_symmetry_defect(self):
        bad = []
        for (a, b, c, d), val in self.riemann.items():
            if val != self.R(c, d, a, b):
                bad.append((a, b, c, d))
        return bad

    def bianchi2_defect(self):
        """(nabla_e R)_abcd + (nabla_c R)_abde + (nabla_d R)_abec."""
        N = self.N
        bad = []
        for a, b in combinations(range(N), 2):
            for c, d, e in combinations(range(N), 3):
                s = self.nR(e, a, b, c, d) + self.nR(c, a, b, d, e) + self.nR(d, a, b, e, c)
                if s:
                    bad.append((a, b, c, d, e))
        return bad

    def ricci_symmetry_defect(self):
        return [
            (a, b)
            for a in range(self.N)
            for b in range(a + 1, self.N)
            if self.ricci[a][b] != self.ricci[b][a]
        ]

    def weyl_trace_defect(self):
        """g^ac W_abcd must vanish."""
        N = self.N
        gi = self.ginv
        bad = []
        for b in range(N):
            for d in range(N):
                s = self.zero
                for a in range(N):
                    for c in range(N):
                        if gi[a][c]:
                            w = self.W(a, b, c, d)
                            if w:
                                s = s + gi[a][c] * w
                if s:
                    bad.append((b, d))
        return bad

    def W(self, a, b, c, d):
        if a == b or c == d:
            return self.zero
        sign = 1
        if a > b:
            a, b, sign = b, a, -sign
        if c > d:
            c, d, sign = d, c, -sign
        val = self.weyl.get((a, b, c, d))
        if val is None:
            return self.zero
        return val if sign > 0 else -val
