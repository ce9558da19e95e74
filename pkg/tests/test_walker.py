import pytest
import sympy
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from walkerhol.errors import NotQuadraticInV, NotWalker, ParseError, ShapeMismatch
from walkerhol.exact import RationalFunction, parse_expr
from walkerhol.walker import (
    WalkerMetric,
    compare_with_formulas,
    extract_components,
    frame_identity_defect,
    geometry_of,
    recurrence_defect,
    ricci_defect,
    screen_curvature_defect,
    screen_geometry,
    structural_defects,
)

from conftest import sympy_riemann, to_sympy

GENERIC = [
    WalkerMetric.from_strings(1, [["1 + x1^2*u"]], ["x1*u"], "v^2*x1 + v*u - x1^3"),
    WalkerMetric.from_strings(
        2, [["1 + u*x2", "x1"], ["x1", "2 + u^2"]], ["x2*u", "x1^2"], "2*v^2 + v*x1*x2 + x1^2*u - x2^3"
    ),
    WalkerMetric.from_strings(2, [["1", "0"], ["0", "1"]], ["0", "0"], "x1^2 - 3*x2^2*u + x1*x2"),
    WalkerMetric.from_strings(3, [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], ["x2^2", "0", "x1*u"],
                              "-v^2 + v*x3 + x1*x2*u"),
]

coef = st.integers(-2, 2)


@st.composite
def small_walker(draw):
    """n = 2 Walker metrics with h close to delta and low-degree A, H."""
    x1, x2 = "x1", "x2"
    mons = ["1", x1, x2, "u", f"{x1}*{x2}", f"{x1}^2", f"{x2}*u"]

    def poly(k):
        return " + ".join(f"({draw(coef)})*{m}" for m in mons[:k])

    h11 = f"1 + ({draw(coef)})*u*{x2}"
    h22 = f"2 + ({draw(coef)})*{x1}*u"
    h12 = f"({draw(coef)})*{x1}"
    A = [poly(5), poly(5)]
    H = f"({draw(coef)})*v^2 + v*({poly(3)}) + {poly(7)}"
    return WalkerMetric.from_strings(2, [[h11, h12], [h12, h22]], A, H)


@pytest.mark.parametrize("g", GENERIC[:2])
def test_riemann_against_sympy(g):
    geo = geometry_of(g)
    oracle = sympy_riemann([[to_sympy(x, g.vars) for x in row] for row in g.matrix()], g.vars)
    N = g.n + 2
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for d in range(N):
                    assert sympy.cancel(to_sympy(geo.R(a, b, c, d), g.vars) - oracle[(a, b, c, d)]) == 0


@pytest.mark.parametrize("g", GENERIC)
def test_identities(g):
    geo = geometry_of(g)
    assert geo.metric_compatibility_defect() == []
    assert geo.bianchi1_defect() == []
    assert geo.pair_symmetry_defect() == []
    assert geo.bianchi2_defect() == []
    assert geo.ricci_symmetry_defect() == []
    assert geo.weyl_trace_defect() == []


@pytest.mark.parametrize("g", GENERIC)
def test_frame_component_cross_checks(g):
    geo = geometry_of(g)
    assert frame_identity_defect(g) == []
    assert structural_defects(g) == []
    comps = extract_components(g)
    assert compare_with_formulas(g, comps) == []
    assert screen_curvature_defect(g, comps) == []
    assert ricci_defect(g, comps, geo) == []
    assert recurrence_defect(g, geo) == []


@pytest.mark.parametrize("g", GENERIC)
def test_scalar_curvature_splits(g):
    lam = extract_components(g).lam
    assert geometry_of(g).scalar == lam * 2 + screen_geometry(g).scalar


@given(small_walker())
@settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_random_metrics_satisfy_identities(g):
    geo = geometry_of(g)
    assert geo.bianchi1_defect() == []
    assert geo.metric_compatibility_defect() == []
    comps = extract_components(g)
    assert compare_with_formulas(g, comps) == []
    assert ricci_defect(g, comps, geo) == []
    assert geo.scalar == comps.lam * 2 + screen_geometry(g).scalar


@pytest.mark.parametrize("f", ["x1*u", "x1^2 - x2*u^2", "3"])
def test_shift_v_two_routes(f):
    g = GENERIC[1]
    shifted = g.shift_v(f)
    assert shifted == g.pullback_v(f)
    v = RationalFunction.var(g.vars, "v")
    fr = parse_expr(f, g.vars)
    assert geometry_of(shifted).scalar == geometry_of(g).scalar.substitute("v", v + fr)


def test_shift_v_rejects_non_quadratic():
    g = WalkerMetric.from_strings(1, [["1"]], ["0"], "v^3")
    with pytest.raises(NotQuadraticInV):
        g.shift_v("x1")


def test_json_roundtrip():
    g = GENERIC[1]
    assert WalkerMetric.from_json(g.to_json()) == g


def test_invalid_metrics():
    with pytest.raises(NotWalker):
        WalkerMetric.from_strings(1, [["v"]], ["0"], "0")
    with pytest.raises(NotWalker):
        WalkerMetric.from_strings(2, [["1", "x1"], ["0", "1"]], ["0", "0"], "0")
    with pytest.raises(ShapeMismatch):
        WalkerMetric.from_strings(2, [["1"]], ["0", "0"], "0")
    with pytest.raises(ParseError):
        WalkerMetric.from_json("{not json")


def test_ppwave_curvature_components():
    g = GENERIC[2]
    c = extract_components(g)
    assert not c.lam and not any(c.v_low) and c.is_zero_P()
    # T_ij = 1/2 d_i d_j H for a pp-wave
    H = g.H
    for i in range(2):
        for j in range(2):
            assert c.T[i][j] == H.diff(f"x{i + 1}").diff(f"x{j + 1}") / 2
