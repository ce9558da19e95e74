import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from walkerhol.errors import DivisionByZero, ParseError, PoleAtPoint, UnknownVariable, VariableMismatch
from walkerhol.exact import Polynomial, RationalFunction, format_expr, parse_expr, parse_polynomial

from conftest import to_sympy

V = ("x", "y", "z")
small = st.integers(-4, 4)


@st.composite
def polys(draw, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_exp)) for _ in V)
        terms[e] = terms.get(e, 0) + draw(small)
    return Polynomial.from_dict(V, {e: mpq(c) for e, c in terms.items() if c})


@st.composite
def ratfuncs(draw):
    num = draw(polys())
    den = draw(polys(max_terms=2, max_exp=2))
    if not den:
        den = Polynomial.const(V, 1)
    return RationalFunction(num, den + Polynomial.const(V, 7) if den.is_constant() else den)


points = st.tuples(*(st.fractions(-3, 3, max_denominator=5) for _ in V))


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Polynomial.const(V, 0)


@given(polys(), polys())
def test_leibniz(a, b):
    for name in V:
        assert (a * b).diff(name) == a.diff(name) * b + a * b.diff(name)


@given(ratfuncs(), ratfuncs())
@settings(max_examples=40, deadline=None)
def test_quotient_rule_and_field_ops(f, g):
    assert (f * g).diff("x") == f.diff("x") * g + f * g.diff("x")
    if g:
        assert (f / g) * g == f


@given(polys(), points)
def test_evaluate_matches_sympy(p, pt):
    syms = sympy.symbols(V)
    expr = to_sympy(p, V)
    exact = p.evaluate(pt)
    oracle = expr.subs(dict(zip(syms, [sympy.Rational(q.numerator, q.denominator) for q in pt])))
    assert sympy.Rational(int(exact.numerator), int(exact.denominator)) == oracle


@given(ratfuncs())
@settings(max_examples=30, deadline=None)
def test_print_parse_roundtrip(f):
    assert parse_expr(format_expr(f), V) == f


def test_finite_difference_oracle():
    f = parse_expr("(x^3*y - 2*z)/(1 + x^2 + y^2)", V)
    df = f.diff("x")
    pt = (mpq(1, 3), mpq(-1, 2), mpq(2))
    step = mpq(1, 10**4)
    ahead = f.evaluate((pt[0] + step, pt[1], pt[2]))
    behind = f.evaluate((pt[0] - step, pt[1], pt[2]))
    fd = float((ahead - behind) / (2 * step))
    assert abs(fd - float(df.evaluate(pt))) < 1e-6


def test_taylor_of_rational_function():
    f = parse_expr("1/(1 - x)", V)
    t = f.taylor((0, 0, 0), 4)
    assert t == parse_polynomial("1 + x + x^2 + x^3 + x^4", V)
    shifted = parse_expr("1/x", V).taylor((1, 0, 0), 2)
    # 1/(1 + s) = 1 - s + s^2 in the shifted variable s = x - 1
    assert shifted == parse_polynomial("1 - x + x^2", V)


def test_normal_form_cancels_common_factors():
    f = parse_expr("(x^2 - y^2)/(x - y)", V)
    assert f.is_polynomial()
    assert f == parse_expr("x + y", V)


def test_errors():
    with pytest.raises(ParseError):
        parse_expr("x +* y", V)
    with pytest.raises(UnknownVariable):
        parse_expr("w + 1", V)
    with pytest.raises(PoleAtPoint):
        parse_expr("1/x", V).evaluate((0, 1, 1))
    with pytest.raises((DivisionByZero, ZeroDivisionError)):
        RationalFunction.const(V, 1) / RationalFunction.const(V, 0)
    with pytest.raises(VariableMismatch):
        RationalFunction.var(V, "x") + RationalFunction.var(("x",), "x")


def test_function_style_evaluate_and_differentiate():
    from walkerhol.exact import differentiate, evaluate

    f = parse_expr("x^2*y + z", V)
    assert evaluate(f, {"x": 2, "y": mpq(1, 2)}) == 2
    assert differentiate(f, "x") == parse_expr("2*x*y", V)
    with pytest.raises(UnknownVariable):
        evaluate(f, {"w": 1})
