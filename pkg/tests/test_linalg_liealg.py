import numpy as np
import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from walkerhol.errors import InvalidSpec, NotInSimN, UnknownAlgebra
from walkerhol.liealg import (
    E,
    LieAlgebraBasis,
    SimElement,
    SimSubalgebraSpec,
    bracket,
    g2,
    identify,
    parse_algebra,
    sim_embed,
    so,
    sp,
    spin7,
    spsp1,
    su,
    u,
    with_center,
)
from walkerhol.liealg.sim import classify, sim_n
from walkerhol.linalg import Subspace, det, inverse, is_zero, kernel, mat, rank

matrices = st.integers(1, 4).flatmap(
    lambda r: st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=r, max_size=r)
)


@given(matrices)
@settings(max_examples=60)
def test_rank_and_kernel_against_sympy(rows):
    M = mat(rows)
    S = sympy.Matrix(rows)
    assert rank(M) == S.rank()
    K = kernel(M)
    assert len(K) == 4 - S.rank()
    for k in K:
        assert is_zero(M @ k)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_inverse(rows):
    M = mat(rows)
    d = det(M)
    assert d == sympy.Matrix(rows).det()
    if d:
        assert is_zero(M @ inverse(M) - mat(np.eye(3, dtype=int).tolist()))


def test_subspace_algebra():
    e = [mat([[1, 0, 0]])[0], mat([[0, 1, 0]])[0], mat([[1, 1, 0]])[0]]
    A = Subspace.span(e[:2], 3)
    B = Subspace.span([e[2]], 3)
    assert A.dim == 2 and A.contains_subspace(B)
    assert A.intersection(B) == B
    assert (A + B) == A


@pytest.mark.parametrize(
    "name, n, dim",
    [("so:3", 3, 3), ("so:5", 5, 10), ("u:2", 4, 4), ("su:3", 6, 8), ("sp:2", 8, 10),
     ("spsp1:2", 8, 13), ("g2", 7, 14), ("spin7", 8, 21), ("so3irrep:3", 7, 3), ("sp:2+t", 8, 11)],
)
def test_catalog_dimensions(name, n, dim):
    h = parse_algebra(name)
    assert (h.n, h.dim) == (n, dim)
    for a in h:
        for b in h:
            assert h.contains(bracket(a, b))


def test_unknown_algebra():
    with pytest.raises(UnknownAlgebra):
        parse_algebra("e8")


def test_identify_catalog():
    assert identify(g2()) == "G2"
    assert identify(spin7()) == "spin(7)"
    assert identify(u(2)) == "u(2)"
    assert identify(with_center(sp(2))) == "sp(2)+t"
    assert identify(spsp1(2)) == "sp(2)+sp(1)"
    assert identify(su(2)) == "su(2)"


def test_sim_element_roundtrip():
    A = E(3, 1, 2)
    X = mat([[1, 2, 3]])[0]
    el = SimElement(mpq(5), A, X)
    back = SimElement.from_matrix(el.to_matrix())
    assert back.a == 5 and is_zero(back.A - A) and is_zero(back.X - X)
    M = el.to_matrix()
    M[2, 0] = 1
    with pytest.raises(NotInSimN):
        SimElement.from_matrix(M)


@pytest.mark.parametrize("type_tag, expected", [(1, 1 + 1 + 2), (2, 1 + 2)])
def test_sim_embed_dimensions_so2(type_tag, expected):
    assert sim_embed(SimSubalgebraSpec(type_tag, so(2))).dim == expected


def test_type3_and_type4_need_abelian_part():
    with pytest.raises(InvalidSpec):
        SimSubalgebraSpec(3, so(3), phi=[1, 0, 0])
    with pytest.raises(InvalidSpec):
        SimSubalgebraSpec(4, so(3), m=2, psi=[[1, 0, 0]])


@pytest.mark.parametrize(
    "spec",
    [
        SimSubalgebraSpec(1, so(3)),
        SimSubalgebraSpec(2, u(2)),
        SimSubalgebraSpec(3, u(2), phi=[0, mpq(1, 2), 0, mpq(1, 2)]),
        SimSubalgebraSpec(4, LieAlgebraBasis([E(3, 1, 2)], name="so(2)"), m=2, psi=[[1]]),
    ],
)
def test_classify_roundtrip(spec):
    mats = sim_embed(spec).matrices
    back = classify(mats, spec.n)
    assert back.type_tag == spec.type_tag
    N = spec.n + 2
    assert Subspace.span([np.asarray(m).reshape(-1) for m in sim_embed(back).matrices], N * N) == \
        Subspace.span([np.asarray(m).reshape(-1) for m in mats], N * N)


def test_sim_n_dimension():
    for n in range(1, 5):
        assert sim_n(n).dim == 1 + n * (n - 1) // 2 + n
