"""Conformally flat Walker metrics and 2-symmetric pp-waves.

Functions of u are polynomials (or rational functions) in u given as
expressions over the Walker variables.  With r2 = sum_k (x^k)^2 and
Psi = 4 (1 - lam(u) r2)^-2 we use sqrt(Psi) = 2 / (1 - lam(u) r2), so every
coefficient stays rational.
"""

from dataclasses import dataclass, field
from itertools import combinations

from gmpy2 import mpq

from .errors import InvalidSpec
from .exact import RationalFunction, as_rf, parse_expr, walker_vars
from .liealg.catalog import so
from .liealg.core import LieAlgebraBasis
from .liealg.sim import SimElement, SimSubalgebraSpec, as_subspace, sim_embed, sim_n
from .linalg import Subspace, zeros
from .walker.components import geometry_of
from .walker.metric import WalkerMetric

BRANCHES = ("lambda_nonzero", "lambda_zero", "general")


def _fn(x, vars):
    if isinstance(x, str):
        x = parse_expr(x, vars)
    f = as_rf(x, vars)
    for name in vars:
        if name != "u" and f.diff(name):
            raise InvalidSpec(f"{name} occurs in a function of u")
    return f


@dataclass
class ConformallyFlatSpec:
    """Data of a conformally flat Walker metric.

    ``lambda_nonzero``: Psi-metric with lam(u) != 0, C, K allowed.
    ``lambda_zero``: flat screen h = delta with A_i = C_i r2.
    ``general``: the Psi-form with lam(u) allowed to vanish at isolated
    points; C must vanish there, since H0 would carry 1/lam^2.
    """

    n: int
    branch: str
    lam: object = 0
    a: object = 0
    C: list = None
    D: list = None
    D0: object = 0
    K: object = 0
    vars: tuple = field(init=False)

    def __post_init__(self):
        if self.n < 2:
            raise InvalidSpec("conformally flat Walker metrics need n >= 2")
        if self.branch not in BRANCHES:
            raise InvalidSpec(f"branch must be one of {BRANCHES}")
        V = self.vars = walker_vars(self.n)
        self.lam = _fn(self.lam, V)
        self.a = _fn(self.a, V)
        self.D0 = _fn(self.D0, V)
        self.K = _fn(self.K, V)
        self.C = [_fn(c, V) for c in (self.C or [0] * self.n)]
        self.D = [_fn(d, V) for d in (self.D or [0] * self.n)]
        if len(self.C) != self.n or len(self.D) != self.n:
            raise InvalidSpec("C and D need n entries")
        if self.branch == "lambda_nonzero" and not self.lam:
            raise InvalidSpec("branch lambda_nonzero needs lam(u) not identically zero")
        if self.branch == "lambda_zero" and self.lam:
            raise InvalidSpec("branch lambda_zero needs lam = 0")
        if self.branch == "lambda_zero" and self.K:
            raise InvalidSpec("K is not part of the flat-screen form")
        if self.branch == "general" and any(self.C):
            raise InvalidSpec("C must vanish when lam(u) may have zeros")

    def is_reduced(self):
        """True when the data is already in the simplest coordinate form."""
        if self.branch == "lambda_zero":
            return True
        return not any(self.C) and not self.K


def _coords(V, n):
    xs = [RationalFunction.var(V, f"x{i + 1}") for i in range(n)]
    r2 = RationalFunction.const(V, 0)
    for x in xs:
        r2 = r2 + x * x
    return xs, r2


def build_conformally_flat(spec):
    n, V = spec.n, spec.vars
    xs, r2 = _coords(V, n)
    zero, one = RationalFunction.const(V, 0), RationalFunction.const(V, 1)
    v = RationalFunction.var(V, "v")
    Cx = zero
    for c, x in zip(spec.C, xs):
        Cx = Cx + c * x
    Dx = zero
    for d, x in zip(spec.D, xs):
        Dx = Dx + d * x
    if spec.branch == "lambda_zero":
        h = [[one if i == j else zero for j in range(n)] for i in range(n)]
        A = [c * r2 for c in spec.C]
        H1 = Cx * (-2)
        CC = zero
        for c in spec.C:
            CC = CC + c * c
        Cdot_x = zero
        for c, x in zip(spec.C, xs):
            Cdot_x = Cdot_x + c.diff("u") * x
        H0 = r2 * (r2 * CC * mpq(1, 4) - Cx * Cx + Cdot_x + spec.a) + Dx + spec.D0
        return WalkerMetric(n, h, A, v * H1 + H0)
    lam = spec.lam
    den = one - lam * r2
    if den.evaluate((0,) * (n + 2)) == 0:
        raise InvalidSpec("1 - lam(u) r2 vanishes at the origin")
    sqrt_psi = den.inverse() * 2
    psi = sqrt_psi * sqrt_psi
    h = [[psi if i == j else zero for j in range(n)] for i in range(n)]
    A = [psi * (Cx * x * (-4) + c * r2 * 2) for c, x in zip(spec.C, xs)]
    # d_u ln Psi = -2 d_u(1 - lam r2) / (1 - lam r2)
    dlnpsi = den.diff("u") * den.inverse() * (-2)
    H1 = Cx * sqrt_psi * (-4) - dlnpsi + spec.K
    H0 = sqrt_psi * (spec.a * r2 + Dx + spec.D0)
    if any(spec.C):
        CC = zero
        for c in spec.C:
            CC = CC + c * c
        H0 = H0 + psi * CC * 4 / (lam * lam)
    return WalkerMetric(n, h, A, lam * v * v + v * H1 + H0)


def build_conformally_flat_general_zero(n, C=None, a_tilde=0, D_tilde=None, D0_tilde=0, K=0):
    """The lam = 0 case of the Psi-form: Psi = 4, A_i = 4(-4 C.x x^i + 2 C_i r2)."""
    V = walker_vars(n)
    xs, r2 = _coords(V, n)
    zero = RationalFunction.const(V, 0)
    C = [_fn(c, V) for c in (C or [0] * n)]
    Dt = [_fn(d, V) for d in (D_tilde or [0] * n)]
    a_tilde, D0_tilde, K = _fn(a_tilde, V), _fn(D0_tilde, V), _fn(K, V)
    v = RationalFunction.var(V, "v")
    Cx = zero
    for c, x in zip(C, xs):
        Cx = Cx + c * x
    CC = zero
    for c in C:
        CC = CC + c * c
    Dx = zero
    for d, x in zip(Dt, xs):
        Dx = Dx + d * x
    h = [[RationalFunction.const(V, 4 if i == j else 0) for j in range(n)] for i in range(n)]
    A = [(Cx * x * (-4) + c * r2 * 2) * 4 for c, x in zip(C, xs)]
    H1 = Cx * (-8) + K
    H0 = r2 * r2 * CC * 16 + a_tilde * r2 + Dx + D0_tilde
    return WalkerMetric(n, h, A, v * H1 + H0)


@dataclass
class ConformalFlatnessReport:
    weyl_zero: bool
    scalar: object
    lam: object
    scalar_matches: bool
    nordstrom: object  # None unless n == 2

    @property
    def ok(self):
        return self.weyl_zero and self.scalar_matches


def check_conformally_flat(metric, geometry=None):
    geo = geometry or geometry_of(metric)
    n = metric.n
    weyl_zero = not any(geo.weyl.values())
    lam = metric.H.diff("v").diff("v") * mpq(1, 2)
    s = geo.scalar
    matches = s == lam * (-(n - 2) * (n + 1))
    nord = (weyl_zero and not s) if n == 2 else None
    return ConformalFlatnessReport(weyl_zero, s, lam, matches, nord)


# --- holonomy of conformally flat metrics ---------------------------------------

@dataclass
class CFHolonomy:
    indecomposable: object  # None when the criterion does not apply to the data
    expected: str  # "R^n", "sim(n)", "so(n)+so(1,1)", "0" or "undetermined"
    expected_span: object
    computed: object = None

    @property
    def confirmed(self):
        if self.expected_span is None or self.computed is None:
            return None
        return self.expected_span == self.computed.span


def _identically_zero(fs):
    return not any(fs)


def expected_cf_holonomy(spec):
    """Holonomy predicted for conformally flat data, as a name and a span."""
    n, N = spec.n, spec.n + 2
    lam = spec.lam
    lam_dot = lam.diff("u")
    if spec.branch == "lambda_zero":
        sq = [c for c in spec.C] + [spec.a]
        indec = not _identically_zero(sq)
        if not indec:
            name = "0"
        elif _identically_zero(spec.C):
            name = "R^n"
        else:
            name = "sim(n)"
    elif lam_dot:
        indec, name = True, "sim(n)"
    elif spec.is_reduced():
        combo = spec.a + lam * spec.D0
        indec = bool(any(spec.D) or combo)
        if indec:
            name = "sim(n)" if lam else "R^n"
        else:
            name = "so(n)+so(1,1)" if lam else "0"
    else:
        return CFHolonomy(None, "undetermined", None)
    return CFHolonomy(indec, name, _span_named(name, n))


def _span_named(name, n):
    N = n + 2
    if name == "0":
        return Subspace.zero(N * N)
    if name == "R^n":
        return as_subspace(sim_embed(SimSubalgebraSpec(2, LieAlgebraBasis.zero(n))).matrices, N)
    if name == "sim(n)":
        return as_subspace(sim_n(n).matrices, N)
    mats = [SimElement(1, zeros(n, n), zeros(n)).to_matrix()]
    mats += [SimElement(0, A, zeros(n)).to_matrix() for A in so(n)]
    return as_subspace(mats, N)


def classify_cf_holonomy(spec, point=None, max_order=None):
    """Predicted holonomy, checked against the span of the built metric."""
    from .holonomy import holonomy_span

    out = expected_cf_holonomy(spec)
    g = build_conformally_flat(spec)
    out.computed = holonomy_span(g, point or (0,) * (spec.n + 2), max_order)
    return out


# --- 2-symmetric metrics --------------------------------------------------------

@dataclass
class TwoSymmetricSpec:
    n: int
    Hdiag: list
    F: list

    def __post_init__(self):
        self.Hdiag = [mpq(x) for x in self.Hdiag]
        self.F = [[mpq(x) for x in row] for row in self.F]
        n = self.n
        if len(self.Hdiag) != n or len(self.F) != n or any(len(r) != n for r in self.F):
            raise InvalidSpec("Hdiag needs n entries and F must be n x n")
        if not any(self.Hdiag):
            raise InvalidSpec("H must be nonzero; otherwise the metric is symmetric")
        if self.Hdiag != sorted(self.Hdiag):
            raise InvalidSpec("diagonal entries of H must be nondecreasing")
        for i in range(n):
            for j in range(i + 1, n):
                if self.F[i][j] != self.F[j][i]:
                    raise InvalidSpec("F must be symmetric")


def build_2symmetric(spec):
    n = spec.n
    V = walker_vars(n)
    xs = [RationalFunction.var(V, f"x{i + 1}") for i in range(n)]
    u = RationalFunction.var(V, "u")
    H = RationalFunction.const(V, 0)
    for i in range(n):
        for j in range(n):
            c = spec.F[i][j] + (spec.Hdiag[i] if i == j else 0) * u
            if c:
                H = H + c * xs[i] * xs[j]
    h = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    return WalkerMetric(n, h, [0] * n, H)


def _null_pair_tensor(metric, S, scale=None):
    """scale * S_ij (du ^ dx^i)_{ab} (du ^ dx^j)_{cd}, keys a<b, c<d as in ``riemann``."""
    N = metric.n + 2
    u = N - 1
    out = {}
    for i in range(metric.n):
        for j in range(metric.n):
            s = S[i][j]
            if not s:
                continue
            val = metric.rf(s) if scale is None else scale * s
            # (du ^ dx^i)_{x_i, u} = -1 with x_i < u
            out[(1 + i, u, 1 + j, u)] = val
    return out


def nabla_R_shape(metric, geometry=None):
    """S with nabla R = du (x) S_ij (p ^ d_i) (x) (p ^ d_j), or None if R is not of that form."""
    geo = geometry or geometry_of(metric)
    n, N = metric.n, metric.n + 2
    u = N - 1
    S = [[None] * n for _ in range(n)]
    for (e, a, b, c, d), val in geo.nabla_R.items():
        if not val:
            continue
        if e != u or b != u or d != u or not (1 <= a <= n and 1 <= c <= n):
            return None
        if not val.is_constant():
            return None
        S[a - 1][c - 1] = val.constant_value()
    return [[x if x is not None else mpq(0) for x in row] for row in S]


def single_scalar(S):
    """f if S = f * identity, else None."""
    n = len(S)
    f = S[0][0]
    for i in range(n):
        for j in range(n):
            if S[i][j] != (f if i == j else 0):
                return None
    return f


def parallel_defect(metric, S, geometry=None):
    """Components of nabla(R - u S_ij (p ^ d_i)(p ^ d_j)) that do not vanish."""
    geo = geometry or geometry_of(metric)
    N = metric.n + 2
    u_var = RationalFunction.var(metric.vars, "u")
    Q = dict(geo.riemann)
    for key, val in _null_pair_tensor(metric, S, u_var).items():
        Q[key] = Q.get(key, metric.rf(0)) - val
    return [k for k, v in _covariant_derivative(geo, Q).items() if v]


def _tensor_get(T, a, b, c, d, zero):
    if a == b or c == d:
        return zero
    sign = 1
    if a > b:
        a, b, sign = b, a, -sign
    if c > d:
        c, d, sign = d, c, -sign
    val = T.get((a, b, c, d))
    if val is None:
        return zero
    return val if sign > 0 else -val


def _covariant_derivative(geo, T):
    """nabla_e T_abcd for T with the symmetries of a curvature tensor."""
    N = geo.N
    zero = geo.zero
    out = {}
    for e in range(N):
        for a, b in combinations(range(N), 2):
            for c, d in combinations(range(N), 2):
                s = geo.d(_tensor_get(T, a, b, c, d, zero), e)
                for m in range(N):
                    for idx, (x, y, z, w) in enumerate(
                        ((m, b, c, d), (a, m, c, d), (a, b, m, d), (a, b, c, m))
                    ):
                        slot = (a, b, c, d)[idx]
                        gm = geo.gamma(m, e, slot)
                        if gm:
                            t = _tensor_get(T, x, y, z, w, zero)
                            if t:
                                s = s - gm * t
                if s:
                    out[(e, a, b, c, d)] = s
    return out


@dataclass
class TwoSymmetricReport:
    nabla2_zero: bool
    nabla_nonzero: bool
    S: object
    scalar_f: object
    parallel_defect: list
    holonomy_Rn: object

    @property
    def ok(self):
        return self.nabla2_zero and self.nabla_nonzero and bool(self.holonomy_Rn)


def check_2symmetric(metric, with_holonomy=True, max_order=None):
    from .holonomy import holonomy_span

    geo = geometry_of(metric)
    n2 = not any(geo.nabla2_R.values())
    n1 = any(geo.nabla_R.values())
    S = nabla_R_shape(metric, geo)
    f = single_scalar(S) if S is not None else None
    pdef = parallel_defect(metric, S, geo) if S is not None else None
    hol = None
    if with_holonomy:
        hs = holonomy_span(metric, (0,) * (metric.n + 2), max_order)
        hol = hs.span == _span_named("R^n", metric.n)
    return TwoSymmetricReport(n2, n1, S, f, pdef, hol)
