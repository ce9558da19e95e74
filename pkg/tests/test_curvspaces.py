import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from walkerhol.curvspaces import (
    CurvatureData,
    assemble,
    build_P,
    dimension_identity,
    extract,
    module_action,
    pspace,
    ric_tilde,
    rspace,
    split_p0_p1,
    tau,
    weak_berger,
    wedge,
)
from walkerhol.errors import ConstraintViolated, InvalidSpec
from walkerhol.liealg import SimSubalgebraSpec, bracket, identify, parse_algebra, sim_embed, so, u
from walkerhol.linalg import is_zero, vec

coeffs = st.lists(st.integers(-3, 3), min_size=64, max_size=64)


@pytest.mark.parametrize("name, expected", [("so:2", 2), ("so:3", 8), ("so:4", 20), ("so:5", 40)])
def test_pspace_so_matches_closed_form(name, expected):
    # dim P(so(n)) = (n - 2) n (n + 2)/3 + n
    assert pspace(parse_algebra(name)).dim == expected


@given(coeffs)
@settings(max_examples=25, deadline=None)
def test_combinations_satisfy_cyclic_identity(cs):
    ps = pspace(so(4))
    elems = ps.elements()
    P = elems[0].scale(cs[0])
    for c, Q in zip(cs[1:], elems[1:]):
        P = P + Q.scale(c)
    assert not P.cyclic_defect()


@pytest.mark.parametrize("name", ["so:3", "u:2", "su:2", "sp:1"])
def test_h_module_closure(name):
    h = parse_algebra(name)
    ps = pspace(h)
    for xi in h:
        for P in ps.elements():
            assert ps.contains(module_action(xi, P))


@pytest.mark.parametrize("name", ["so:3", "u:2", "sp:2+t", "g2"])
def test_weak_berger_span_is_ideal(name):
    h = parse_algebra(name)
    L, _ = weak_berger(h)
    for a in h:
        for b in L:
            assert L.contains(bracket(a, b))


def test_table2_instances():
    L, ok = weak_berger(parse_algebra("sp:2+t"))
    assert not ok
    assert identify(L) == "sp(2)"
    assert pspace(parse_algebra("so3irrep:3")).dim == 0


def test_ric_tilde_of_so_p1():
    # P(y) = x ^ y gives sum_i (x ^ e_i) e_i = (1 - n) x
    x = vec([1, 2, -1, 3])
    assert is_zero(ric_tilde(build_P("so_p1", x=x)) - x * (1 - 4))


def test_ric_tilde_of_so_pair():
    # sum_i (S e_i ^ x + e_i ^ S x) e_i = tr S x + (n - 2) S x
    S = [[1, 0, 0], [0, 0, 0], [0, 0, 2]]
    assert is_zero(ric_tilde(build_P("so_pair", S=S, x=[1, 1, 0])) - vec([4, 3, 0]))


def test_ric_tilde_of_single_term():
    # P(y) = S y ^ x alone gives (tr S - S) x, which vanishes under tr S = 0, S x = 0
    S = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
    assert is_zero(ric_tilde(build_P("so_p0", S=S, x=[0, 0, 1])))


def test_p0_p1_split_g2():
    p0, p1 = split_p0_p1(pspace(parse_algebra("g2")))
    assert (p0.dim, p1.dim) == (64, 0)


@pytest.mark.parametrize(
    "kind, params",
    [("so_pair", {"S": [[1, 2, 0], [2, 0, 1], [0, 1, -1]], "x": [1, 0, 2]}),
     ("so_p0", {"S": [[1, 0, 0], [0, -1, 0], [0, 0, 0]], "x": [0, 0, 1]}),
     ("u_m", {"x": [1, 0, 2, -1]}),
     ("spsp1", {"x": [1, 0, 0, 0, 0, 2, 0, 0]}),
     ("adjoint", {"base": so(3), "x": [1, 2, 3]}),
     ("from_S", {"kind": "u", "m": 2, "S": {(0, 0, 0): (1, 0), (1, 0, 1): (0, 2)}}),
     ("g2_lemma1", {}),
     ("spin7_lemma1", {})],
)
def test_constructors_land_in_P(kind, params):
    P = build_P(kind, **params)
    assert not P.cyclic_defect()
    assert pspace(P.h).contains(P)


def test_constructor_preconditions():
    with pytest.raises(ConstraintViolated):
        build_P("so_p0", S=[[1, 0], [0, 0]], x=[0, 1])
    with pytest.raises(InvalidSpec):
        build_P("u_m", x=[1, 2, 3])
    with pytest.raises(InvalidSpec):
        build_P("nope")


def test_tau_lands_in_P():
    h = u(2)
    ps = pspace(h)
    for R in rspace(h).elements()[:4]:
        for x in ([1, 0, 0, 0], [0, 1, 2, 0]):
            assert ps.contains(tau(R, x, h))


def test_wedge_convention():
    x, y, z = vec([1, 0, 0]), vec([0, 1, 0]), vec([1, 1, 1])
    # (x ^ y) z = g(x, z) y - g(y, z) x
    assert is_zero(wedge(x, y) @ z - (y - x))


@pytest.mark.parametrize("h", [so(2), so(3), u(2)])
def test_dimension_identity(h):
    lhs, rhs = dimension_identity(h)
    assert lhs == rhs


def test_dimension_identity_trivial_algebra():
    from walkerhol.liealg import LieAlgebraBasis

    lhs, rhs = dimension_identity(LieAlgebraBasis.zero(3))
    assert lhs == rhs == 1 + 3 + 6


def test_assemble_extract_roundtrip():
    h = so(3)
    P = build_P("so_p1", x=[1, 2, 0])
    R0 = rspace(h).elements()[0]
    T = np.array([[mpq(1), mpq(2), mpq(0)], [mpq(2), mpq(0), mpq(1)], [mpq(0), mpq(1), mpq(3)]], dtype=object)
    data = CurvatureData(mpq(2), vec([1, -1, 0]), R0, P, T)
    spec = SimSubalgebraSpec(1, h)
    R = assemble(data, spec)
    assert extract(R, h) == data
    assert rspace(sim_embed(spec)).contains(R)
