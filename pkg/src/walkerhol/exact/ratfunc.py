"""Rational functions num/den over Q.

Every result is normalised: the denominator is a primitive integer
polynomial with positive leading coefficient, common monomial factors are
cancelled, and a constant denominator is folded into the numerator.  A full
multivariate gcd is computed only when the denominator's total degree exceeds
``gcd_threshold`` (default 8); below that, common non-monomial factors may
survive until they grow.
"""

from contextlib import contextmanager
from functools import lru_cache

from gmpy2 import mpq

from ..errors import DivisionByZero, PoleAtPoint, UnknownVariable, VariableMismatch
from .poly import MASK, Polynomial, _SCALARS, rat

_settings = {"gcd_threshold": 8}


def gcd_threshold():
    return _settings["gcd_threshold"]


def set_gcd_threshold(d):
    _settings["gcd_threshold"] = int(d)


@contextmanager
def gcd_threshold_set(d):
    old = _settings["gcd_threshold"]
    _settings["gcd_threshold"] = int(d)
    try:
        yield
    finally:
        _settings["gcd_threshold"] = old


@lru_cache(maxsize=None)
def _sympy_ring(vars):
    from sympy import QQ
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(vars), QQ)
    return R


def _to_sympy(p):
    R = _sympy_ring(p.vars)
    return R.from_dict({e: c for e, c in p.items()})


def _from_sympy(vars, sp):
    return Polynomial.from_dict(vars, {tuple(e): mpq(c) for e, c in sp.terms()})


def poly_gcd_cofactors(a, b):
    """(g, a/g, b/g) for polynomials a, b, using sympy's sparse gcd."""
    g, ca, cb = _to_sympy(a).cofactors(_to_sympy(b))
    return _from_sympy(a.vars, g), _from_sympy(a.vars, ca), _from_sympy(a.vars, cb)


def _normalize(num, den, full_gcd=None):
    if not den.terms:
        raise DivisionByZero("rational function with zero denominator")
    vars = num.vars
    if not num.terms:
        return num, Polynomial.const(vars, 1)
    if den.is_constant():
        c = den.constant_term()
        return num.scale(1 / c), Polynomial.const(vars, 1)
    # cancel monomial factors
    mk = num.monomial_content()
    dk = den.monomial_content()
    if mk and dk:
        n_ = len(vars)
        common = 0
        shift = 0
        for _ in range(n_):
            common |= min((mk >> shift) & MASK, (dk >> shift) & MASK) << shift
            shift += 16
        if common:
            num = num.div_monomial(common)
            den = den.div_monomial(common)
    if full_gcd is None:
        full_gcd = den.total_degree() > _settings["gcd_threshold"]
    if full_gcd and not den.is_constant():
        if len(den.terms) > 1 or len(num.terms) > 1:
            g, num, den = poly_gcd_cofactors(num, den)
    if den.is_constant():
        c = den.constant_term()
        return num.scale(1 / c), Polynomial.const(vars, 1)
    c = den.content()
    if den.leading()[1] < 0:
        c = -c
    if c != 1:
        num = num.scale(1 / c)
        den = den.scale(1 / c)
    return num, den


class RationalFunction:
    """Quotient of two polynomials in the same variable tuple."""

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num, den=None, *, full_gcd=None):
        if den is None:
            den = Polynomial.const(num.vars, 1)
        if num.vars != den.vars:
            raise VariableMismatch(f"{num.vars} vs {den.vars}")
        self.num, self.den = _normalize(num, den, full_gcd)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def const(cls, vars, c):
        return cls._raw(Polynomial.const(vars, c), Polynomial.const(vars, 1))

    @classmethod
    def var(cls, vars, name):
        return cls._raw(Polynomial.var(vars, name), Polynomial.const(vars, 1))

    @classmethod
    def from_poly(cls, p):
        return cls._raw(p, Polynomial.const(p.vars, 1))

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self):
        return self.den.is_constant()

    def as_polynomial(self):
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        return self.num.scale(1 / self.den.constant_term())

    def is_constant(self):
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_term() / self.den.constant_term()

    def reduced(self):
        """Same function with a full gcd cancellation applied."""
        return RationalFunction(self.num, self.den, full_gcd=True)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return RationalFunction.from_poly(other)
        if isinstance(other, _SCALARS):
            return RationalFunction.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RationalFunction(a + c, b)
        if d.is_constant():
            return RationalFunction(a + c * b, b)
        if b.is_constant():
            return RationalFunction(a * d + c, d)
        q = d.divexact(b)
        if q is not None:
            return RationalFunction(a * q + c, d)
        q = b.divexact(d)
        if q is not None:
            return RationalFunction(a + c * q, b)
        return RationalFunction(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = rat(other)
            if not c:
                return RationalFunction.const(self.vars, 0)
            return RationalFunction._raw(self.num.scale(c), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return RationalFunction.const(self.vars, 0)
        a, b, c, d = self.num, self.den, other.num, other.den
        # cheap cross cancellation when a denominator divides a numerator
        if not d.is_constant():
            q = a.divexact(d)
            if q is not None:
                a, d = q, Polynomial.const(self.vars, 1)
        if not b.is_constant():
            q = c.divexact(b)
            if q is not None:
                c, b = q, Polynomial.const(self.vars, 1)
        return RationalFunction(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise DivisionByZero("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError("exponent must be an int")
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e, full_gcd=False)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    # calculus ---------------------------------------------------------------
    def diff(self, name):
        dn = self.num.diff(name)
        if self.den.is_constant():
            return RationalFunction._raw(dn, self.den)
        dd = self.den.diff(name)
        if not dd.terms:
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise PoleAtPoint(f"denominator vanishes at {point}")
        return self.num.evaluate(point) / d

    def substitute(self, name, value):
        """Replace a variable by a rational function (or polynomial/scalar)."""
        value = self._coerce(value)
        dnum = max(self.num.degree_in(name), 0)
        dden = max(self.den.degree_in(name), 0)
        top = max(dnum, dden)

        def subst(p):
            # p(value) * value.den^top, kept polynomial
            out = Polynomial(p.vars, {})
            groups = {}
            s = 16 * (len(p.vars) - 1 - p.index(name))
            for k, c in p.terms.items():
                e = (k >> s) & MASK
                groups.setdefault(e, {})[k - (e << s)] = c
            for e, t in groups.items():
                out = out + Polynomial(p.vars, t) * value.num ** e * value.den ** (top - e)
            return out

        return RationalFunction(subst(self.num), subst(self.den))

    def taylor(self, point, degree):
        """Taylor polynomial at ``point`` in shifted coordinates (x - point)."""
        vals = [rat(x) for x in point]
        num = self.num.shift(vals).truncate(degree)
        if self.den.is_constant():
            return num.scale(1 / self.den.constant_term())
        den = self.den.shift(vals).truncate(degree)
        d0 = den.constant_term()
        if not d0:
            raise PoleAtPoint(f"denominator vanishes at {point}")
        rest = (den - d0).scale(-1 / d0)
        inv = Polynomial.const(self.vars, 1 / d0)
        acc = Polynomial.const(self.vars, 1)
        total = Polynomial.const(self.vars, 1)
        for _ in range(degree):
            acc = acc.mul_trunc(rest, degree)
            if not acc.terms:
                break
            total = total + acc
        return num.mul_trunc(total, degree) * inv

    def __repr__(self):
        from .expr import format_expr

        return f"RationalFunction({format_expr(self)!r})"

    def __str__(self):
        from .expr import format_expr

        return format_expr(self)


def as_rf(x, vars):
    """Coerce a scalar, expression string, Polynomial or RationalFunction."""
    if isinstance(x, RationalFunction):
        if x.vars != tuple(vars):
            raise VariableMismatch(f"{x.vars} vs {tuple(vars)}")
        return x
    if isinstance(x, Polynomial):
        if x.vars != tuple(vars):
            raise VariableMismatch(f"{x.vars} vs {tuple(vars)}")
        return RationalFunction.from_poly(x)
    if isinstance(x, str):
        from .expr import parse_expr

        return parse_expr(x, tuple(vars))
    return RationalFunction.const(vars, x)


def differentiate(f, var):
    return f.diff(var)


def evaluate(f, point):
    """Value at ``point``, a mapping from variable names to rationals (missing names are 0)."""
    if isinstance(point, dict):
        unknown = set(point) - set(f.vars)
        if unknown:
            raise UnknownVariable(f"unknown variables {sorted(unknown)}")
        point = tuple(point.get(name, 0) for name in f.vars)
    return f.evaluate(point)
