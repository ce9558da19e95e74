import pytest
from gmpy2 import mpq
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from walkerhol.curvspaces import build_P
from walkerhol.einstein import (
    build_ricci_flat,
    einstein_residuals,
    einstein_residuals_simplified,
    quartic_einstein_metric,
    quartic_einstein_seed,
    holonomy_einstein_consistency,
    is_einstein,
    petrov_type_4d,
    poisson_particular,
    ricci_flat_data,
    totally_ricci_isotropic,
    weyl_display_defect,
)
from walkerhol.errors import NotDim4, NotNormalForm
from walkerhol.exact import parse_expr
from walkerhol.walker import WalkerMetric, det_T


@pytest.mark.parametrize("L", [-1, -2, 3])
def test_quartic_einstein_is_einstein_by_both_routes(L):
    g = quartic_einstein_metric(L)
    assert einstein_residuals(g, L).all_zero
    assert is_einstein(g, L)
    assert einstein_residuals_simplified(g, L).all_zero


@pytest.mark.parametrize("L", [-1, -2, 3])
def test_quartic_einstein_det_T(L):
    g = quartic_einstein_metric(L)
    want = parse_expr(f"-9*({L})^4*x1^4*(x1^4 + v^2)", g.vars)
    assert det_T(g) == want


def test_quartic_einstein_coordinate_change():
    L = -2
    seed = quartic_einstein_seed(L)
    assert einstein_residuals(seed, L).all_zero
    moved = seed.change_x(["x1", f"x2 + 2*({L})*u*x1^3"])
    assert moved == quartic_einstein_metric(L)


def test_residuals_detect_wrong_lambda():
    g = quartic_einstein_metric(-1)
    r = einstein_residuals(g, -2)
    assert not r.all_zero and not is_einstein(g, -2)


coef = st.integers(-2, 2)


@given(coef, coef, coef, coef)
@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_residuals_agree_with_coordinate_ricci(a, b, c, d):
    H = f"({a})*v^2 + v*(({b})*x1) + ({c})*x1^2 + ({d})*x2^2*u"
    g = WalkerMetric.from_strings(2, [["1", "0"], ["0", "1"]], ["0", f"({b})*x1^2"], H)
    for L in (a, 0):
        assert einstein_residuals(g, L).all_zero == is_einstein(g, L)


@pytest.mark.parametrize("P", [build_P("so_p1", x=[1, 0]), build_P("so_p1", x=[1, 2, 0]),
                               build_P("u_m", x=[1, 0, 0, 0])])
def test_ricci_flat_construction(P):
    g = build_ricci_flat(P)
    assert is_einstein(g, 0)


def test_poisson_particular_solves_laplace():
    P = build_P("u_m", x=[1, 0, 1, 0])
    _, _, K = ricci_flat_data(P)
    H0 = poisson_particular(K, 4)
    lap = sum((H0.diff(f"x{i}").diff(f"x{i}") for i in range(1, 5)), H0 - H0)
    assert lap == K


def test_totally_ricci_isotropic():
    pp = WalkerMetric.from_strings(2, [["1", "0"], ["0", "1"]], ["0", "0"], "x1^2 + 2*x2^2")
    assert totally_ricci_isotropic(pp)
    assert not totally_ricci_isotropic(quartic_einstein_metric(-1))


def test_consistency_on_quartic_einstein():
    rep = holonomy_einstein_consistency(quartic_einstein_metric(-1), -1, point=(0, 1, 0, 0))
    assert rep.einstein and not rep.ricci_flat
    assert rep.ok
    assert rep.type_tag == 1


def test_consistency_on_ricci_flat_type2():
    g = build_ricci_flat(build_P("u_m", x=[1, 0, 0, 0]))
    rep = holonomy_einstein_consistency(g, 0)
    assert rep.ricci_flat and rep.ok


def test_weyl_of_quartic_einstein():
    g = quartic_einstein_metric(-1)
    # W = R - Lambda/3 (x ^ y) in the frame: coefficients 2/3 on p^q and X^Y, -1/3 on the mixed pairs
    assert weyl_display_defect(g) == []
    # swapping the two coefficients does not describe the trace-free part
    assert weyl_display_defect(g, (mpq(1, 3), mpq(-2, 3)))


def test_petrov_type_field():
    pf = petrov_type_4d(quartic_einstein_metric(-1), -1)
    # det T = -9 x^4 (x^4 + v^2) has no zeros with x != 0
    assert pf.type_at((0, 1, 0, 0)) == "II"
    assert pf.type_at((1, 2, 5, 7)) == "II"


def test_petrov_preconditions():
    with pytest.raises(NotNormalForm):
        petrov_type_4d(quartic_einstein_seed(-1))
    with pytest.raises(NotDim4):
        petrov_type_4d(WalkerMetric.minkowski(3))
    with pytest.raises(NotNormalForm):
        petrov_type_4d(quartic_einstein_metric(-1), Lambda=-2)
