"""Walker metrics g = 2 dv du + h + 2 A du + H du^2."""

import json

from gmpy2 import mpq

from ..errors import InvalidSpec, NotQuadraticInV, NotWalker, ParseError, ShapeMismatch
from ..exact import Polynomial, RationalFunction, as_rf, format_expr, parse_expr, walker_vars
from ..exact.poly import unpack

HALF = mpq(1, 2)


def rf_inverse(m):
    """Inverse of a square matrix of rational functions (Gauss-Jordan)."""
    from ..errors import DegenerateMetric

    n = len(m)
    if n == 0:
        return []
    vars_ = m[0][0].vars
    one = RationalFunction.const(vars_, 1)
    zero = RationalFunction.const(vars_, 0)
    a = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise DegenerateMetric("matrix is singular as a rational function matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv if x else x for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def rf_det(m):
    """Determinant by fraction-free cofactor expansion (small sizes only)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * rf_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else RationalFunction.const(m[0][0].vars, 0)


class WalkerMetric:
    """Coefficients (h_ij, A_i, H) over the variables (v, x1..xn, u)."""

    def __init__(self, n, h, A, H, check=True):
        if n < 1:
            raise InvalidSpec("n must be positive")
        self.n = n
        self.vars = walker_vars(n)
        V = self.vars
        self.h = [[as_rf(x, V) for x in row] for row in h]
        self.A = [as_rf(x, V) for x in A]
        self.H = as_rf(H, V)
        if len(self.h) != n or any(len(r) != n for r in self.h) or len(self.A) != n:
            raise ShapeMismatch("h must be n x n and A must have n entries")
        if check:
            for i in range(n):
                for j in range(i + 1, n):
                    if self.h[i][j] != self.h[j][i]:
                        raise NotWalker("h must be symmetric")
            for f in [x for row in self.h for x in row] + self.A:
                if f.diff("v"):
                    raise NotWalker("h and A must not depend on v")

    # construction ---------------------------------------------------------
    @classmethod
    def from_strings(cls, n, h, A, H):
        V = walker_vars(n)
        return cls(
            n,
            [[parse_expr(str(x), V) for x in row] for row in h],
            [parse_expr(str(x), V) for x in A],
            parse_expr(str(H), V),
        )

    @classmethod
    def from_dict(cls, d):
        try:
            n = int(d["n"])
            h = d.get("h")
            if h is None:
                h = [["1" if i == j else "0" for j in range(n)] for i in range(n)]
            A = d.get("A") or ["0"] * n
            return cls.from_strings(n, h, A, d.get("H", "0"))
        except KeyError as exc:
            raise ParseError(f"metric spec is missing {exc}") from None
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed metric spec: {exc}") from None

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return cls.from_dict(d)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(fh.read())

    def to_dict(self):
        return {
            "n": self.n,
            "h": [[format_expr(x) for x in row] for row in self.h],
            "A": [format_expr(x) for x in self.A],
            "H": format_expr(self.H),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def minkowski(cls, n):
        return cls(n, [[1 if i == j else 0 for j in range(n)] for i in range(n)], [0] * n, 0)

    def __eq__(self, other):
        return (
            self.n == other.n
            and all(a == b for r1, r2 in zip(self.h, other.h) for a, b in zip(r1, r2))
            and all(a == b for a, b in zip(self.A, other.A))
            and self.H == other.H
        )

    __hash__ = None

    # the full metric --------------------------------------------------------
    def rf(self, c):
        return RationalFunction.const(self.vars, c)

    def matrix(self):
        """Coordinate Gram matrix in the order (v, x1..xn, u)."""
        n, N = self.n, self.n + 2
        z = self.rf(0)
        g = [[z] * N for _ in range(N)]
        g[0][N - 1] = g[N - 1][0] = self.rf(1)
        for i in range(n):
            for j in range(n):
                g[1 + i][1 + j] = self.h[i][j]
            g[1 + i][N - 1] = g[N - 1][1 + i] = self.A[i]
        g[N - 1][N - 1] = self.H
        return g

    def h_inverse(self):
        if not hasattr(self, "_hinv"):
            self._hinv = rf_inverse(self.h)
        return self._hinv

    def inverse_matrix(self):
        """Closed form: g^uv = 1, g^ij = h^ij, g^iv = -h^ij A_j, g^vv = A h^-1 A - H."""
        n, N = self.n, self.n + 2
        k = self.h_inverse()
        z = self.rf(0)
        gi = [[z] * N for _ in range(N)]
        gi[0][N - 1] = gi[N - 1][0] = self.rf(1)
        kA = []
        for i in range(n):
            s = z
            for j in range(n):
                if k[i][j] and self.A[j]:
                    s = s + k[i][j] * self.A[j]
            kA.append(s)
        for i in range(n):
            for j in range(n):
                gi[1 + i][1 + j] = k[i][j]
            gi[1 + i][0] = gi[0][1 + i] = -kA[i]
        s = -self.H
        for i in range(n):
            if kA[i] and self.A[i]:
                s = s + kA[i] * self.A[i]
        gi[0][0] = s
        return gi

    def is_ppwave(self):
        """A = 0, h = delta and H free of v, literally in these coordinates."""
        n = self.n
        if any(self.A):
            return False
        for i in range(n):
            for j in range(n):
                if self.h[i][j] != (1 if i == j else 0):
                    return False
        return not self.H.diff("v")

    # null frame -------------------------------------------------------------
    def frame(self):
        """Rows p, X_1..X_n, q as coordinate components over (v, x, u)."""
        n, N = self.n, self.n + 2
        z, one = self.rf(0), self.rf(1)
        rows = []
        p = [z] * N
        p[0] = one
        rows.append(p)
        for i in range(n):
            X = [z] * N
            X[1 + i] = one
            X[0] = -self.A[i]
            rows.append(X)
        q = [z] * N
        q[N - 1] = one
        q[0] = -self.H * HALF
        rows.append(q)
        return rows

    def frame_gram(self):
        """g(E_a, E_b) for the frame rows, computed from the coordinate metric."""
        g = self.matrix()
        F = self.frame()
        N = self.n + 2
        z = self.rf(0)
        out = [[z] * N for _ in range(N)]
        for a in range(N):
            for b in range(N):
                s = z
                for i in range(N):
                    if not F[a][i]:
                        continue
                    for j in range(N):
                        if F[b][j] and g[i][j]:
                            s = s + F[a][i] * g[i][j] * F[b][j]
                out[a][b] = s
        return out

    # v-structure and coordinate changes --------------------------------------
    def v_coefficients(self):
        """(lam, H1, H0) with H = lam v^2 + v H1 + H0, or None if not of that form."""
        H = self.H
        num, den = H.num, H.den
        if den.degree_in("v") > 0 or num.degree_in("v") > 2:
            return None
        d1 = H.diff("v")
        lam = d1.diff("v") * HALF
        return lam, d1.substitute("v", self.rf(0)), H.substitute("v", self.rf(0))

    def shift_v(self, f):
        """Metric in the coordinate v' with v = v' + f(x, u).

        A_i -> A_i + d_i f, H1 -> H1 + 2 lam f, H0 -> H0 + H1 f + lam f^2 + 2 df/du.
        """
        f = as_rf(f, self.vars)
        if f.diff("v"):
            raise InvalidSpec("f must not depend on v")
        coeffs = self.v_coefficients()
        if coeffs is None:
            raise NotQuadraticInV("H is not quadratic in v")
        lam, H1, H0 = coeffs
        if not lam.is_constant():
            raise NotQuadraticInV("the v^2 coefficient of H must be constant")
        v = RationalFunction.var(self.vars, "v")
        A = [a + f.diff(f"x{i + 1}") for i, a in enumerate(self.A)]
        H1n = H1 + lam * f * 2
        H0n = H0 + H1 * f + lam * f * f + f.diff("u") * 2
        return WalkerMetric(self.n, self.h, A, lam * v * v + v * H1n + H0n)

    def pullback_v(self, f):
        """Same change of coordinates as ``shift_v``, done by substitution into g."""
        f = as_rf(f, self.vars)
        v = RationalFunction.var(self.vars, "v")
        A = [a + f.diff(f"x{i + 1}") for i, a in enumerate(self.A)]
        H = self.H.substitute("v", v + f) + f.diff("u") * 2
        return WalkerMetric(self.n, self.h, A, H)

    def change_x(self, phi):
        """Pull back along x^i = phi^i(x~, u), keeping v and u.

        ``phi`` lists n rational functions of (x, u).  The new h, A, H are
        h~_jk = h_il d_j phi^i d_k phi^l, A~_j = (h_il phi.^l + A_i) d_j phi^i and
        H~ = H + 2 A_i phi.^i + h_il phi.^i phi.^l, all composed with phi.
        """
        n, V = self.n, self.vars
        phi = [as_rf(p, V) for p in phi]
        if len(phi) != n:
            raise ShapeMismatch("phi must have n components")

        def compose(F):
            return _compose(F, phi)

        hc = [[compose(x) for x in row] for row in self.h]
        Ac = [compose(a) for a in self.A]
        Hc = compose(self.H)
        J = [[phi[i].diff(f"x{j + 1}") for j in range(n)] for i in range(n)]
        dot = [p.diff("u") for p in phi]
        z = self.rf(0)
        h_new = [[z] * n for _ in range(n)]
        for j in range(n):
            for k in range(n):
                s = z
                for i in range(n):
                    for l in range(n):
                        if J[i][j] and J[l][k] and hc[i][l]:
                            s = s + hc[i][l] * J[i][j] * J[l][k]
                h_new[j][k] = s
        A_new = []
        for j in range(n):
            s = z
            for i in range(n):
                if not J[i][j]:
                    continue
                t = Ac[i]
                for l in range(n):
                    if hc[i][l] and dot[l]:
                        t = t + hc[i][l] * dot[l]
                if t:
                    s = s + t * J[i][j]
            A_new.append(s)
        H_new = Hc
        for i in range(n):
            if dot[i]:
                H_new = H_new + Ac[i] * dot[i] * 2
                for l in range(n):
                    if hc[i][l] and dot[l]:
                        H_new = H_new + hc[i][l] * dot[i] * dot[l]
        return WalkerMetric(n, h_new, A_new, H_new)


def _compose(F, phi):
    """F(v, phi(x, u), u): simultaneous substitution, expanded term by term."""
    return _compose_poly(F.num, phi) / _compose_poly(F.den, phi)


def _compose_poly(p, phi):
    V = p.vars
    nv = len(V)
    out = RationalFunction.const(V, 0)
    cache = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = phi[i] ** e
        return cache[key]

    for key, c in p.terms.items():
        exps = unpack(key, nv)
        term = RationalFunction.const(V, c)
        rest = [0] * nv
        for idx, e in enumerate(exps):
            if not e:
                continue
            name = V[idx]
            if name.startswith("x"):
                term = term * power(int(name[1:]) - 1, e)
            else:
                rest[idx] = e
        mono = Polynomial.from_dict(V, {tuple(rest): 1})
        out = out + term * RationalFunction.from_poly(mono)
    return out
