import pytest
import sympy
from gmpy2 import mpq

from walkerhol.errors import InvalidSpec
from walkerhol.specialgeom import (
    ConformallyFlatSpec,
    TwoSymmetricSpec,
    build_2symmetric,
    build_conformally_flat,
    build_conformally_flat_general_zero,
    check_2symmetric,
    check_conformally_flat,
    classify_cf_holonomy,
    expected_cf_holonomy,
    single_scalar,
)
from walkerhol.walker import WalkerMetric, geometry_of

from conftest import sympy_riemann, to_sympy

CF_CASES = [
    ConformallyFlatSpec(2, "lambda_nonzero", lam=1, a=2, D=["u", "1"], D0="u^2"),
    ConformallyFlatSpec(2, "lambda_nonzero", lam="1 + u", C=["1", "u"], K="u"),
    ConformallyFlatSpec(3, "lambda_nonzero", lam=-2, a="u", C=["0", "1", "0"], D=["1", "0", "u"]),
    ConformallyFlatSpec(2, "lambda_zero", a="u", C=["u", "1"], D=["1", "0"], D0=3),
    ConformallyFlatSpec(3, "lambda_zero", C=["1", "0", "u^2"], D=["0", "u", "0"]),
    ConformallyFlatSpec(2, "general", lam="u", a=1, D=["0", "u"], K="u^2"),
    ConformallyFlatSpec(3, "general", lam="u^2 - u", D0="u"),
]


@pytest.mark.parametrize("spec", CF_CASES)
def test_conformally_flat_builder(spec):
    rep = check_conformally_flat(build_conformally_flat(spec))
    assert rep.weyl_zero
    assert rep.scalar_matches
    if spec.n == 2:
        assert rep.nordstrom == (not rep.scalar)


@pytest.mark.parametrize("n", [2, 3])
def test_general_branch_at_lambda_zero(n):
    g = build_conformally_flat_general_zero(n, C=["u"] + ["0"] * (n - 1), a_tilde="u", D0_tilde=1, K="u")
    rep = check_conformally_flat(g)
    assert rep.weyl_zero and not rep.scalar


def test_weyl_against_sympy():
    g = build_conformally_flat(ConformallyFlatSpec(2, "lambda_nonzero", lam=1, a=1, D=["1", "0"]))
    V = g.vars
    G = sympy.Matrix([[to_sympy(x, V) for x in row] for row in g.matrix()])
    R = sympy_riemann(G.tolist(), V)
    N = 4
    Ginv = G.inv()
    ric = [[sympy.cancel(sum(Ginv[a, c] * R[(a, b, c, d)] for a in range(N) for c in range(N)))
            for d in range(N)] for b in range(N)]
    s = sympy.cancel(sum(Ginv[b, d] * ric[b][d] for b in range(N) for d in range(N)))
    # in dimension 4: W = R - (g ∧ P), P = (Ric - s g / 6) / 2
    P = [[(ric[a][b] - s * G[a, b] / 6) / 2 for b in range(N)] for a in range(N)]
    for (a, b, c, d), val in R.items():
        kn = G[a, c] * P[b][d] + G[b, d] * P[a][c] - G[a, d] * P[b][c] - G[b, c] * P[a][d]
        assert sympy.cancel(val - kn) == 0
    assert sympy.cancel(s + 0) == 0


def test_quartic_ppwave_is_not_conformally_flat():
    g = WalkerMetric.from_strings(2, [["1", "0"], ["0", "1"]], ["0", "0"], "x1^4")
    assert not check_conformally_flat(g).weyl_zero


HOLONOMY_CASES = [
    (ConformallyFlatSpec(2, "lambda_zero"), "0"),
    (ConformallyFlatSpec(2, "lambda_zero", a=1), "R^n"),
    (ConformallyFlatSpec(2, "lambda_zero", C=["1", "0"]), "sim(n)"),
    (ConformallyFlatSpec(2, "lambda_nonzero", lam="1 + u"), "sim(n)"),
    (ConformallyFlatSpec(2, "lambda_nonzero", lam=1, D=["1", "0"]), "sim(n)"),
    (ConformallyFlatSpec(2, "lambda_nonzero", lam=1), "so(n)+so(1,1)"),
    (ConformallyFlatSpec(2, "lambda_nonzero", lam=2, a=-2, D0=1), "so(n)+so(1,1)"),
    (ConformallyFlatSpec(2, "general", lam=0, a=1), "R^n"),
    (ConformallyFlatSpec(3, "general", lam="u"), "sim(n)"),
]


@pytest.mark.parametrize("spec, name", HOLONOMY_CASES)
def test_cf_holonomy(spec, name):
    out = classify_cf_holonomy(spec)
    assert out.expected == name
    assert out.indecomposable == (name not in ("0", "so(n)+so(1,1)"))
    assert out.confirmed


def test_cf_holonomy_undetermined_with_C():
    out = expected_cf_holonomy(ConformallyFlatSpec(2, "lambda_nonzero", lam=1, C=["1", "0"]))
    assert out.expected == "undetermined" and out.confirmed is None


def test_cf_spec_errors():
    with pytest.raises(InvalidSpec):
        ConformallyFlatSpec(1, "lambda_zero")
    with pytest.raises(InvalidSpec):
        ConformallyFlatSpec(2, "sideways")
    with pytest.raises(InvalidSpec):
        ConformallyFlatSpec(2, "lambda_nonzero")
    with pytest.raises(InvalidSpec):
        ConformallyFlatSpec(2, "lambda_zero", lam=1)
    with pytest.raises(InvalidSpec):
        ConformallyFlatSpec(2, "general", lam="u", C=["1", "0"])
    with pytest.raises(InvalidSpec):
        ConformallyFlatSpec(2, "lambda_zero", a="x1")
    with pytest.raises(InvalidSpec):
        ConformallyFlatSpec(2, "lambda_zero", C=["1"])


TWO_SYM = [
    TwoSymmetricSpec(1, [1], [[3]]),
    TwoSymmetricSpec(2, [1, 1], [[0, 1], [1, 2]]),
    TwoSymmetricSpec(2, [1, 2], [[0, 0], [0, 0]]),
    TwoSymmetricSpec(3, [-1, 0, 2], [[0, 1, 0], [1, 0, 1], [0, 1, 0]]),
]


@pytest.mark.parametrize("spec", TWO_SYM)
def test_two_symmetric(spec):
    rep = check_2symmetric(build_2symmetric(spec))
    assert rep.ok
    assert rep.parallel_defect == []
    n = spec.n
    assert rep.S == [[-spec.Hdiag[i] if i == j else 0 for j in range(n)] for i in range(n)]


def test_single_scalar_only_for_multiples_of_identity():
    assert single_scalar([[mpq(-1), 0], [0, mpq(-1)]]) == -1
    assert single_scalar([[mpq(-1), 0], [0, mpq(-2)]]) is None
    rep = check_2symmetric(build_2symmetric(TWO_SYM[1]), with_holonomy=False)
    assert rep.scalar_f == -1


def test_two_symmetric_decomposable_case():
    # a zero row in F together with Hdiag_2 = 0 splits off a flat line
    rep = check_2symmetric(build_2symmetric(TwoSymmetricSpec(3, [-1, 0, 2], [[0] * 3] * 3)))
    assert rep.nabla2_zero and rep.nabla_nonzero
    assert not rep.holonomy_Rn


def test_symmetric_ppwave_is_not_two_symmetric():
    g = WalkerMetric.from_strings(2, [["1", "0"], ["0", "1"]], ["0", "0"], "x1^2 + x2^2")
    rep = check_2symmetric(g, with_holonomy=False)
    assert not rep.nabla_nonzero


def test_two_symmetric_spec_errors():
    with pytest.raises(InvalidSpec):
        TwoSymmetricSpec(2, [0, 0], [[0, 0], [0, 0]])
    with pytest.raises(InvalidSpec):
        TwoSymmetricSpec(2, [2, 1], [[0, 0], [0, 0]])
    with pytest.raises(InvalidSpec):
        TwoSymmetricSpec(2, [1, 2], [[0, 1], [0, 0]])
    with pytest.raises(InvalidSpec):
        TwoSymmetricSpec(2, [1], [[0, 0], [0, 0]])


def test_geometry_nabla_R_shape():
    geo = geometry_of(build_2symmetric(TWO_SYM[2]))
    keys = {k[0] for k, v in geo.nabla_R.items() if v}
    assert keys == {3}
