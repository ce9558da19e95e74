import pytest
from gmpy2 import mpq

from walkerhol.errors import InvalidSpec, Mismatch, NotStabilized
from walkerhol.holonomy import (
    build_metric_thm18,
    classify_span,
    holonomy_span,
    realization_A,
    verify_realization,
)
from walkerhol.liealg import identify, sim_n
from walkerhol.liealg.sim import as_subspace
from walkerhol.walker import WalkerMetric

import realizations as R


@pytest.mark.parametrize("type_tag", [1, 2, 3, 4])
def test_so2_all_types(type_tag):
    rep = verify_realization(R.so2_inputs()[type_tag])
    assert rep.ok
    assert rep.classified.type_tag == type_tag


@pytest.mark.parametrize("type_tag, dim", [(1, 7), (2, 6)])
def test_so3_types_1_2(type_tag, dim):
    rep = verify_realization(R.so3_inputs()[type_tag])
    assert rep.ok and rep.computed.dim == dim


@pytest.mark.parametrize("type_tag", [3, 4])
def test_so3_types_3_4_are_rejected(type_tag):
    with pytest.raises(InvalidSpec):
        R.so3_abelian_types(type_tag)


@pytest.mark.parametrize("type_tag, dim", [(1, 9), (2, 8), (3, 8), (4, 8)])
def test_u2_all_types(type_tag, dim):
    rep = verify_realization(R.u2_inputs()[type_tag])
    assert rep.ok and rep.computed.dim == dim
    assert rep.classified.type_tag == type_tag


def test_minkowski_has_trivial_holonomy():
    hs = holonomy_span(WalkerMetric.minkowski(3), (0,) * 5)
    assert hs.dim == 0 and hs.stabilized


def test_ppwave_holonomy_is_translations():
    g = WalkerMetric.from_strings(2, [["1", "0"], ["0", "1"]], ["0", "0"], "x1^2 + u*x2^2 + x1*x2")
    hs = holonomy_span(g, (0,) * 4)
    spec = classify_span(hs)
    assert spec.type_tag == 2 and spec.h.dim == 0 and hs.dim == 2


def test_generic_metric_reaches_sim_n():
    g = WalkerMetric.from_strings(2, [["1", "0"], ["0", "1"]], ["x2^2", "x1*x2*u"], "v^2 + v*x1 + x2^3")
    hs = holonomy_span(g, (0,) * 4)
    assert hs.span == as_subspace(sim_n(2).matrices, 4)


def test_span_is_bracket_closed():
    hs = holonomy_span(build_metric_thm18(R.u2_inputs()[3]), (0,) * 6)
    assert hs.is_bracket_closed()


def test_order_cap_raises_with_partial_span():
    g = build_metric_thm18(R.so3_inputs()[1])
    with pytest.raises(NotStabilized) as exc:
        holonomy_span(g, (0,) * 5, max_order=1)
    assert exc.value.partial is not None


def test_env_override(monkeypatch):
    g = build_metric_thm18(R.so3_inputs()[1])
    monkeypatch.setenv("HOLONOMY_MAX_ORDER", "1")
    with pytest.raises(NotStabilized):
        holonomy_span(g, (0,) * 5)


def test_mismatch_reports_difference():
    from walkerhol.liealg import SimSubalgebraSpec

    inp = R.so2_inputs()[2]
    # expect p ^ q as well, which the type 2 metric does not produce
    inp.spec = SimSubalgebraSpec(1, inp.h)
    with pytest.raises(Mismatch) as exc:
        verify_realization(inp)
    assert exc.value.missing and not exc.value.extra


def test_A_closed_form_at_a_point():
    # A_i(x) = 2/3 sum_jk P^i_jk x^j x^k with P^i_jk = P(e_k)[i, j]; at x = e_j + e_k
    imgs = R.g2_input().P.images()
    A = realization_A(R.g2_input().P)
    i, j, k = 0, 2, 5
    pt = [0] * 9
    pt[1 + j] = pt[1 + k] = 1
    want = (imgs[j][i, j] + imgs[k][i, j] + imgs[j][i, k] + imgs[k][i, k]) * mpq(2, 3)
    assert A[i].evaluate(pt) == want


@pytest.mark.parametrize("inp, printed", [(R.g2_input, R.PRINTED_G2_A), (R.spin7_input, R.PRINTED_SPIN7_A)])
def test_A_matches_printed_examples(inp, printed):
    built = build_metric_thm18(inp())
    assert built == R.printed_metric(printed)


@pytest.mark.slow
def test_g2_realization():
    rep = verify_realization(R.g2_input())
    assert rep.computed.dim == 21
    assert identify(rep.classified.h) == "G2"
