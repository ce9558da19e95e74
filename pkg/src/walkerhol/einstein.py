"""Einstein equations for Walker metrics, Ricci-flat constructions and Petrov types.

Indices of the screen family h(u) are raised with h^{-1}; nabla is the
Levi-Civita connection of h(u) with u held fixed, and dots are d/du.
"""

from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import NotDim4, NotNormalForm, WalkerholError
from .exact import Polynomial, walker_vars
from .holonomy import realization_A
from .linalg import zeros
from .walker.components import (
    det_T,
    extract_components,
    geometry_of,
    screen_geometry,
)
from .walker.metric import WalkerMetric

HALF = mpq(1, 2)


class _Screen:
    """Calculus on the family h(u) needed by the residuals."""

    def __init__(self, metric):
        self.m = metric
        self.n = metric.n
        self.geo = screen_geometry(metric)
        self.k = metric.h_inverse()
        self.xs = metric.vars[1:-1]
        self.zero = metric.rf(0)

    def d(self, f, i):
        return f.diff(self.xs[i])

    def contract(self, S):
        """h^{ij} S_ij."""
        s = self.zero
        for i in range(self.n):
            for j in range(self.n):
                if self.k[i][j] and S[i][j]:
                    s = s + self.k[i][j] * S[i][j]
        return s

    def hessian(self, f):
        """nabla_i nabla_j f."""
        n = self.n
        df = [self.d(f, i) for i in range(n)]
        out = [[self.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s = self.d(df[j], i)
                for c in range(n):
                    g = self.geo.gamma(c, i, j)
                    if g and df[c]:
                        s = s - g * df[c]
                out[i][j] = out[j][i] = s
        return out

    def laplacian(self, f):
        return self.contract(self.hessian(f))

    def cov1(self, w):
        """nabla_j w_i as grid [j][i]."""
        n = self.n
        out = [[self.zero] * n for _ in range(n)]
        for j in range(n):
            for i in range(n):
                s = self.d(w[i], j)
                for c in range(n):
                    g = self.geo.gamma(c, j, i)
                    if g and w[c]:
                        s = s - g * w[c]
                out[j][i] = s
        return out

    def divergence(self, w):
        """nabla^i w_i."""
        return self.contract(self.cov1(w))

    def div2(self, S):
        """(nabla^j S_ij)_i for a 2-tensor S."""
        n = self.n
        out = []
        for i in range(n):
            s = self.zero
            for j in range(n):
                for a in range(n):
                    if not self.k[j][a]:
                        continue
                    # nabla_a S_ij
                    t = self.d(S[i][j], a)
                    for c in range(n):
                        g1 = self.geo.gamma(c, a, i)
                        if g1 and S[c][j]:
                            t = t - g1 * S[c][j]
                        g2 = self.geo.gamma(c, a, j)
                        if g2 and S[i][c]:
                            t = t - g2 * S[i][c]
                    if t:
                        s = s + self.k[j][a] * t
            out.append(s)
        return out

    def raise_one(self, w):
        n = self.n
        return [sum((self.k[i][j] * w[j] for j in range(n) if self.k[i][j] and w[j]), self.zero)
                for i in range(n)]

    def raise_two(self, S):
        n = self.n
        k = self.k
        out = [[self.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s = self.zero
                for a in range(n):
                    if not k[i][a]:
                        continue
                    for b in range(n):
                        if k[j][b] and S[a][b]:
                            s = s + k[i][a] * k[j][b] * S[a][b]
                out[i][j] = s
        return out

    def pair(self, S_up, T_low):
        s = self.zero
        for i in range(self.n):
            for j in range(self.n):
                if S_up[i][j] and T_low[i][j]:
                    s = s + S_up[i][j] * T_low[i][j]
        return s


def _dot(M):
    return [[x.diff("u") for x in row] for row in M]


@dataclass
class EinsteinResiduals:
    Lambda: object
    lam: object  # lambda - Lambda, or None if H is not quadratic in v
    eq83: object
    eq84: list
    eq85: object
    eq86: list
    notes: list = field(default_factory=list)

    def items(self):
        yield "lambda", self.lam
        yield "eq83", self.eq83
        for i, r in enumerate(self.eq84):
            yield f"eq84[{i + 1}]", r
        yield "eq85", self.eq85
        for i, row in enumerate(self.eq86):
            for j, r in enumerate(row):
                if j >= i:
                    yield f"eq86[{i + 1},{j + 1}]", r

    @property
    def all_zero(self):
        return all(r is not None and not r for _, r in self.items())


def einstein_residuals(metric, Lambda):
    """Residuals of Ric = Lambda g in terms of h, A and H = lam v^2 + v H1 + H0."""
    Lambda = mpq(Lambda)
    m = metric
    n = m.n
    coeffs = m.v_coefficients()
    if coeffs is None:
        return EinsteinResiduals(Lambda, None, None, [None] * n, None, [[None] * n] * n,
                                 ["H is not quadratic in v"])
    lam, H1, H0 = coeffs
    notes = []
    if H1.diff("v") or H0.diff("v"):
        notes.append("H1 or H0 depends on v")
    sc = _Screen(m)
    A = m.A
    hdot = _dot(m.h)
    hddot = _dot(hdot)
    Adot = [a.diff("u") for a in A]
    F = [[sc.d(A[j], i) - sc.d(A[i], j) for j in range(n)] for i in range(n)]
    F_up = sc.raise_two(F)
    A_up = sc.raise_one(A)
    hdot_up = sc.raise_two(hdot)  # indices of h-dot raised with h^{-1}
    trace_hdot = sc.contract(hdot)
    divA = sc.divergence(A)

    eq83 = (
        sc.laplacian(H0)
        - sc.pair(F_up, F) * HALF
        - sum((A_up[i] * sc.d(H1, i) for i in range(n)), sc.zero) * 2
        - H1 * divA
        + sum((A_up[i] * A[i] for i in range(n)), sc.zero) * (2 * Lambda)
        - sc.divergence(Adot) * 2
        - sc.pair(hdot_up, hdot) * HALF
        + sc.contract(hddot)
        + sc.contract(hdot) * H1 * HALF
    )
    divF = sc.div2(F)
    divhdot = sc.div2(hdot)
    eq84 = [
        divF[i] + sc.d(H1, i) - A[i] * (2 * Lambda) + divhdot[i] - sc.d(trace_hdot, i)
        for i in range(n)
    ]
    eq85 = sc.laplacian(H1) - divA * (2 * Lambda) - trace_hdot * Lambda
    ric = sc.geo.ricci
    eq86 = [[ric[i][j] - m.h[i][j] * Lambda for j in range(n)] for i in range(n)]
    return EinsteinResiduals(Lambda, lam - Lambda, eq83, eq84, eq85, eq86, notes)


def coordinate_einstein_defect(metric, Lambda, geometry=None):
    """Index pairs (a, b) with Ric_ab != Lambda g_ab in the coordinates."""
    geo = geometry or geometry_of(metric)
    g = metric.matrix()
    N = metric.n + 2
    ric = geo.ricci
    return [(a, b) for a in range(N) for b in range(a, N) if ric[a][b] != g[a][b] * mpq(Lambda)]


def is_einstein(metric, Lambda, geometry=None):
    return not coordinate_einstein_defect(metric, Lambda, geometry)


# --- the normal form with A = 0 and H = Lambda v^2 + H0 ----------------------

def _check_normal_form(metric, Lambda):
    if any(metric.A):
        raise NotNormalForm("A must vanish")
    coeffs = metric.v_coefficients()
    if coeffs is None:
        raise NotNormalForm("H must be Lambda v^2 + H0")
    lam, H1, H0 = coeffs
    if lam != metric.rf(Lambda) or H1 or H0.diff("v"):
        raise NotNormalForm("H must be Lambda v^2 + H0 with H0 free of v")
    return H0


@dataclass
class SimplifiedResiduals:
    Lambda: object
    laplace: object
    divergence: list
    trace: object
    ricci: list

    def items(self):
        yield "laplace", self.laplace
        for i, r in enumerate(self.divergence):
            yield f"divergence[{i + 1}]", r
        yield "trace", self.trace
        for i, row in enumerate(self.ricci):
            for j, r in enumerate(row):
                if j >= i:
                    yield f"ricci[{i + 1},{j + 1}]", r

    @property
    def all_zero(self):
        return all(not r for _, r in self.items())


def einstein_residuals_simplified(metric, Lambda):
    """Residuals of the reduced system for Lambda != 0 in normal form."""
    Lambda = mpq(Lambda)
    if not Lambda:
        raise NotNormalForm("the reduced system needs Lambda != 0")
    H0 = _check_normal_form(metric, Lambda)
    sc = _Screen(metric)
    n = metric.n
    hdot = _dot(metric.h)
    ric = sc.geo.ricci
    return SimplifiedResiduals(
        Lambda,
        sc.laplacian(H0) + sc.contract(_dot(hdot)) * HALF,
        sc.div2(hdot),
        sc.contract(hdot),
        [[ric[i][j] - metric.h[i][j] * Lambda for j in range(n)] for i in range(n)],
    )


# --- Ricci-flat metrics with prescribed P ------------------------------------

def ricci_flat_data(P):
    """(A, H1, K) with K the right-hand side of sum_i d_i^2 H0 = K."""
    n = P.n
    vars = walker_vars(n)
    xs = [Polynomial.var(vars, f"x{i + 1}") for i in range(n)]
    zero = Polynomial(vars, {})
    imgs = P.images()
    A = realization_A(P)
    # sum_i P^k_ii = (P(e_i) e_i)_k
    ric = [sum((imgs[i][k, i] for i in range(n)), mpq(0)) for k in range(n)]
    H1 = zero
    for k in range(n):
        if ric[k]:
            H1 = H1 + xs[k].scale(2 * ric[k])
    # F_ij = 2 P^j_ik x^k with P^j_ik = P(e_k)[j, i]
    F = [[sum((xs[k].scale(2 * imgs[k][j, i]) for k in range(n) if imgs[k][j, i]), zero)
          for j in range(n)] for i in range(n)]
    divA = zero
    for i in range(n):
        divA = divA + A[i].diff(f"x{i + 1}")
    FF = zero
    for i in range(n):
        for j in range(n):
            FF = FF + F[i][j] * F[i][j]
    tail = zero
    for i in range(n):
        if ric[i]:
            tail = tail + A[i].scale(ric[i])
    # 1/2 sum d_i^2 H0 = 1/4 sum F_ij^2 + 1/2 H1 div A + 2 A_i sum_k P^i_kk
    K = FF.scale(mpq(1, 2)) + H1 * divA + tail.scale(4)
    return A, H1, K


def poisson_particular(K, n):
    """A polynomial H0 with sum_i d_i^2 H0 = K for K of degree at most two."""
    vars = K.vars
    xs = [Polynomial.var(vars, f"x{i + 1}") for i in range(n)]
    names = [f"x{i + 1}" for i in range(n)]
    zero = Polynomial(vars, {})
    sq = zero
    for i in range(n):
        sq = sq + (xs[i] ** 2) * K.diff(names[i]).diff(names[i])
    K1 = K - sq.scale(HALF)
    K2 = K1 - xs[0] * K1.diff(names[0])
    quart = zero
    for i in range(n):
        quart = quart + (xs[i] ** 4) * K.diff(names[i]).diff(names[i])
    return (
        (xs[0] ** 2 * K2).scale(HALF)
        + (xs[0] ** 3 * K1.diff(names[0])).scale(mpq(1, 6))
        + quart.scale(mpq(1, 24))
    )


def breaking_harmonic(n, vars=None):
    """(x1)^2 + .. + (x_{n-1})^2 - (n-1)(x_n)^2."""
    vars = vars or walker_vars(n)
    xs = [Polynomial.var(vars, f"x{i + 1}") for i in range(n)]
    out = Polynomial(vars, {})
    for i in range(n - 1):
        out = out + xs[i] ** 2
    return out - (xs[n - 1] ** 2).scale(n - 1)


def build_ricci_flat(P):
    """Ricci-flat metric with h = delta, A from P and H = v H1 + H0."""
    n = P.n
    A, H1, K = ricci_flat_data(P)
    H0 = poisson_particular(K, n) + breaking_harmonic(n)
    v = Polynomial.var(walker_vars(n), "v")
    h = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    return WalkerMetric(n, h, A, v * H1 + H0)


# --- Ricci isotropy -----------------------------------------------------------

def totally_ricci_isotropic(metric, geometry=None):
    """g(Ric X, Ric Y) = 0 for all X, Y, i.e. Ric g^{-1} Ric = 0."""
    geo = geometry or geometry_of(metric)
    N = metric.n + 2
    ric = geo.ricci
    gi = geo.ginv
    for a in range(N):
        for b in range(a, N):
            s = metric.rf(0)
            for c in range(N):
                if not ric[a][c]:
                    continue
                for d in range(N):
                    if gi[c][d] and ric[d][b]:
                        s = s + ric[a][c] * gi[c][d] * ric[d][b]
            if s:
                return False
    return True


# --- holonomy versus Einstein condition -----------------------------------------

TYPE2_ISOTROPIC = ("su(", "sp(", "G2", "spin(7)")
RICCI_FLAT_TYPE2 = ("so(", "su(", "sp(", "G2", "spin(7)")


@dataclass
class Implication:
    name: str
    antecedent: object  # True, False or None when undetermined
    consequent: bool

    @property
    def holds(self):
        return not self.antecedent or self.consequent


@dataclass
class ConsistencyReport:
    Lambda: object
    einstein: bool
    ricci_flat: bool
    type_tag: object
    h_name: object
    implications: list

    @property
    def ok(self):
        return all(i.holds for i in self.implications)


def _h_name(spec):
    from .liealg.catalog import identify

    if spec is None:
        return None
    name = identify(spec.h)
    if name is not None and name.endswith("+sp(1)"):
        return name.replace("sp(", "spsp1(", 1)
    return name


def _is_single_factor(name, prefixes):
    if name is None:
        return None
    if name.startswith("sp(") and "+" in name:
        return False
    return name.startswith(prefixes)


def holonomy_einstein_consistency(metric, Lambda, span=None, point=None):
    """Check the holonomy-type implications of the Einstein condition."""
    from .holonomy import classify_span, holonomy_span

    Lambda = mpq(Lambda)
    geo = geometry_of(metric)
    einstein = is_einstein(metric, Lambda, geo)
    ricci_flat = is_einstein(metric, 0, geo)
    if span is None:
        span = holonomy_span(metric, point or (0,) * (metric.n + 2))
    spec = None
    if span.dim:
        try:
            spec = span.classified or classify_span(span)
        except WalkerholError:
            spec = None
    t = spec.type_tag if spec else None
    name = _h_name(spec)
    trivial_part = None
    if spec is not None and spec.h.dim:
        from .holonomy import _trivial_dim

        trivial_part = _trivial_dim(spec.h)
    imps = [
        Implication("Einstein => type 1 or 2", einstein and t is not None, t in (1, 2)),
        Implication("Einstein, Lambda != 0 => type 1", einstein and bool(Lambda) and t is not None, t == 1),
        Implication("Einstein, parallel null vector => Ricci-flat", einstein and t in (2, 4), ricci_flat),
        Implication(
            "Einstein, not Ricci-flat => no trivial summand",
            einstein and not ricci_flat and trivial_part is not None,
            trivial_part == 0,
        ),
        Implication(
            "Ricci-flat, type 2 => h from so, su, sp, G2, spin(7)",
            ricci_flat and t == 2 and (name is not None or None),
            bool(_is_single_factor(name, RICCI_FLAT_TYPE2)),
        ),
        Implication(
            "type 2 with su, sp, G2, spin(7) => totally Ricci-isotropic",
            t == 2 and _is_single_factor(name, TYPE2_ISOTROPIC),
            totally_ricci_isotropic(metric, geo),
        ),
    ]
    return ConsistencyReport(Lambda, einstein, ricci_flat, t, name, imps)


# --- dimension four -------------------------------------------------------------

@dataclass
class PetrovField:
    detT: object
    vars: tuple

    def type_at(self, point):
        return "II" if self.detT.evaluate(point) else "D"

    def locus_D(self):
        from .exact import format_expr

        return f"{format_expr(self.detT.num)} = 0"


def quartic_einstein_seed(Lambda):
    """Four-dimensional Einstein metric with A = 2x dy, H = L v^2 - L x^4."""
    L = mpq(Lambda)
    s = f"(1/(({-L})*x1^2))"
    return WalkerMetric.from_strings(2, [[s, "0"], ["0", s]], ["0", "2*x1"], f"({L})*v^2 - ({L})*x1^4")


def quartic_einstein_metric(Lambda):
    """The seed after y -> y + 2 L u x^3, which removes A (c = 1, b = u)."""
    L = mpq(Lambda)
    den = f"(({-L})*x1^2)"
    h11 = f"(36*({L})^2*u^2*x1^4 + 1)/{den}"
    h12 = f"6*({L})*u*x1^2/{den}"
    h22 = f"1/{den}"
    return WalkerMetric.from_strings(2, [[h11, h12], [h12, h22]], ["0", "0"], f"({L})*v^2 + 3*({L})*x1^4")


def petrov_type_4d(metric, Lambda=None):
    """Petrov type II/D of a four-dimensional Einstein metric in normal form."""
    if metric.n != 2:
        raise NotDim4("Petrov types are defined here for n = 2 only")
    if any(metric.A):
        raise NotNormalForm("A must vanish")
    coeffs = metric.v_coefficients()
    if coeffs is None or not coeffs[0].is_constant() or coeffs[1]:
        raise NotNormalForm("H must be Lambda v^2 + H0")
    lam = coeffs[0].constant_value()
    if Lambda is not None and mpq(Lambda) != lam:
        raise NotNormalForm("the v^2 coefficient differs from Lambda")
    if not lam:
        raise NotNormalForm("Lambda must be nonzero")
    if not is_einstein(metric, lam):
        raise NotNormalForm("metric is not Einstein")
    return PetrovField(det_T(metric), metric.vars)


def weyl_display_defect(metric, coefficients=(mpq(2, 3), mpq(-1, 3))):
    """Compare the Weyl tensor of a 4D normal-form Einstein metric with

    W(p,q) = a L p^q,  W(X,Y) = a L X^Y,  W(p,X) = b L p^X,
    W(X,q) = b L X^q + p^T(X),

    for (x^y)z = g(y,z)x - g(x,z)y, so that R(p,q) = L p^q.  The default
    (a, b) = (2/3, -1/3) is W = R - L/3 x^y.  Returns failing frame quadruples.
    """
    from itertools import combinations

    from .walker.components import T_endomorphism

    if metric.n != 2:
        raise NotDim4("the display is four-dimensional")
    ca, cb = coefficients
    L = metric.v_coefficients()[0]
    geo = geometry_of(metric)
    F = metric.frame()
    G = metric.frame_gram()
    N = 4
    p, q = 0, 3
    TE = T_endomorphism(metric)
    zero = metric.rf(0)

    def gdot(x, b):
        return sum((x[i] * G[i][b] for i in range(N) if x[i]), zero)

    def wedge_val(x, y, b, a):
        # g((x^y) E_b, E_a)
        return gdot(y, b) * gdot(x, a) - gdot(x, b) * gdot(y, a)

    def unit(i):
        e = [zero] * N
        e[i] = metric.rf(1)
        return e

    def T_of(i):
        e = [zero] * N
        for j in range(2):
            e[1 + j] = TE[j][i - 1]
        return e

    def expected(c, d, b, a):
        if (c, d) == (p, q):
            return wedge_val(unit(p), unit(q), b, a) * L * ca
        if c == p:
            return wedge_val(unit(p), unit(d), b, a) * L * cb
        if d == q:
            return wedge_val(unit(c), unit(q), b, a) * L * cb + wedge_val(unit(p), T_of(c), b, a)
        return wedge_val(unit(c), unit(d), b, a) * L * ca

    def actual(a, b, c, d):
        s = zero
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
                        if xd:
                            w = geo.W(al, be, ga, de)
                            if w:
                                s = s + w * xa * xb * xc * xd
        return s

    bad = []
    for c, d in combinations(range(N), 2):
        for a in range(N):
            for b in range(N):
                if actual(a, b, c, d) != expected(c, d, b, a):
                    bad.append((a, b, c, d))
    return bad
