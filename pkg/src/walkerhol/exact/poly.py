"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are packed into a single Python int, 16 bits per variable, with the
first variable in the most significant field.  Integer comparison of packed
keys is therefore lexicographic order on exponent vectors, and monomial
multiplication is integer addition.
"""

from fractions import Fraction
from math import comb

from gmpy2 import mpq, mpz

from ..errors import UnknownVariable, VariableMismatch

BITS = 16
MASK = (1 << BITS) - 1
MAX_EXP = MASK


def rat(x):
    """Coerce ints, Fractions, mpq and 'p/q' strings to mpq."""
    if isinstance(x, type(mpq())):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, (int, type(mpz()))):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


_MPQ = type(mpq())
_SCALARS = (int, Fraction, _MPQ, type(mpz()))


def pack(exps):
    key = 0
    for e in exps:
        if e < 0 or e > MAX_EXP:
            raise OverflowError("exponent out of range")
        key = (key << BITS) | e
    return key


def unpack(key, nvars):
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & MASK
        key >>= BITS
    return tuple(out)


def _key_degree(key):
    d = 0
    while key:
        d += key & MASK
        key >>= BITS
    return d


class Polynomial:
    """Polynomial over Q in a fixed, ordered tuple of variable names."""

    __slots__ = ("vars", "terms", "_deg")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        self.terms = terms if terms is not None else {}
        self._deg = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, vars, c):
        c = rat(c)
        return cls(vars, {0: c} if c else {})

    @classmethod
    def var(cls, vars, name):
        vars = tuple(vars)
        try:
            i = vars.index(name)
        except ValueError:
            raise UnknownVariable(f"variable {name!r} not in {vars}") from None
        return cls(vars, {1 << (BITS * (len(vars) - 1 - i)): mpq(1)})

    @classmethod
    def from_dict(cls, vars, d):
        """Build from {exponent tuple: coefficient}."""
        vars = tuple(vars)
        terms = {}
        for exps, c in d.items():
            if len(exps) != len(vars):
                raise VariableMismatch("exponent tuple length differs from variable count")
            c = rat(c)
            if c:
                k = pack(exps)
                terms[k] = terms.get(k, 0) + c
                if not terms[k]:
                    del terms[k]
        return cls(vars, terms)

    def _shift(self, i):
        return BITS * (len(self.vars) - 1 - i)

    def index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(f"variable {name!r} not in {self.vars}") from None

    # inspection ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self):
        return self.terms.get(0, mpq(0))

    def total_degree(self):
        if self._deg is None:
            self._deg = max((_key_degree(k) for k in self.terms), default=-1)
        return self._deg

    def degree_in(self, name):
        s = self._shift(self.index(name))
        return max(((k >> s) & MASK for k in self.terms), default=-1)

    def items(self):
        """(exponent tuple, coefficient) pairs in descending lex order."""
        n = len(self.vars)
        return [(unpack(k, n), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def leading(self):
        k = max(self.terms)
        return k, self.terms[k]

    def support_vars(self):
        n = len(self.vars)
        used = set()
        for k in self.terms:
            for i, e in enumerate(unpack(k, n)):
                if e:
                    used.add(self.vars[i])
        return used

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, _SCALARS):
            return Polynomial.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k)
            if s is None:
                t[k] = c
            else:
                s = s + c
                if s:
                    t[k] = s
                else:
                    del t[k]
        return Polynomial(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = rat(c)
        if not c:
            return Polynomial(self.vars, {})
        return Polynomial(self.vars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial(self.vars, {})
        if self.total_degree() + other.total_degree() > MAX_EXP:
            raise OverflowError("polynomial degree exceeds the packed exponent range")
        if len(a) < len(b):
            a, b = b, a
        t = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return Polynomial(self.vars, {k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponent must be a non-negative int")
        result = Polynomial.const(self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_trunc(self, other, degree):
        """Product with all terms of total degree above ``degree`` dropped."""
        if other.vars != self.vars:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")
        da = {k: _key_degree(k) for k in self.terms}
        db = {k: _key_degree(k) for k in other.terms}
        t = {}
        get = t.get
        for kb, cb in other.terms.items():
            room = degree - db[kb]
            if room < 0:
                continue
            for ka, ca in self.terms.items():
                if da[ka] <= room:
                    k = ka + kb
                    t[k] = get(k, 0) + ca * cb
        return Polynomial(self.vars, {k: c for k, c in t.items() if c})

    def truncate(self, degree):
        return Polynomial(self.vars, {k: c for k, c in self.terms.items() if _key_degree(k) <= degree})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, _SCALARS):
            return self.is_constant() and self.constant_term() == rat(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # calculus and evaluation ---------------------------------------------
    def diff(self, name):
        s = self._shift(self.index(name))
        one = 1 << s
        t = {}
        for k, c in self.terms.items():
            e = (k >> s) & MASK
            if e:
                t[k - one] = c * e
        return Polynomial(self.vars, t)

    def _point_values(self, point):
        """Normalise a point (mapping or sequence) to a tuple of mpq."""
        n = len(self.vars)
        if isinstance(point, dict):
            for name in point:
                if name not in self.vars:
                    raise UnknownVariable(f"variable {name!r} not in {self.vars}")
            vals = []
            for name in self.vars:
                if name in point:
                    vals.append(rat(point[name]))
                else:
                    vals.append(None)
            return tuple(vals)
        vals = tuple(rat(x) for x in point)
        if len(vals) != n:
            raise VariableMismatch(f"point has {len(vals)} entries, expected {n}")
        return vals

    def evaluate(self, point):
        vals = self._point_values(point)
        n = len(self.vars)
        total = mpq(0)
        needed = self.support_vars()
        for i, name in enumerate(self.vars):
            if vals[i] is None and name in needed:
                raise UnknownVariable(f"no value supplied for {name!r}")
        for k, c in self.terms.items():
            term = c
            for i, e in enumerate(unpack(k, n)):
                if e:
                    term *= vals[i] ** e
            total += term
        return total

    def shift(self, offsets):
        """f(x + offsets), offsets a sequence aligned with ``vars``."""
        offs = [rat(o) for o in offsets]
        if len(offs) != len(self.vars):
            raise VariableMismatch("offset length differs from variable count")
        cur = self
        for i, c in enumerate(offs):
            if not c:
                continue
            s = cur._shift(i)
            one = 1 << s
            t = {}
            for k, coef in cur.terms.items():
                e = (k >> s) & MASK
                if not e:
                    t[k] = t.get(k, 0) + coef
                    continue
                base = k - e * one
                # (x + c)^e = sum_j C(e, j) c^(e-j) x^j
                powers = [mpq(1)]
                for _ in range(e):
                    powers.append(powers[-1] * c)
                for j in range(e + 1):
                    kk = base + j * one
                    t[kk] = t.get(kk, 0) + coef * comb(e, j) * powers[e - j]
            cur = Polynomial(self.vars, {k: v for k, v in t.items() if v})
        return cur

    def substitute(self, name, poly):
        """Replace variable ``name`` by the polynomial ``poly``."""
        poly = self._coerce(poly)
        s = self._shift(self.index(name))
        groups = {}
        for k, c in self.terms.items():
            e = (k >> s) & MASK
            groups.setdefault(e, {})[k - (e << s)] = c
        result = Polynomial(self.vars, {})
        powers = {0: Polynomial.const(self.vars, 1)}
        for e in sorted(groups):
            if e not in powers:
                powers[e] = poly ** e
            result = result + Polynomial(self.vars, groups[e]) * powers[e]
        return result

    # content and division ------------------------------------------------
    def content(self):
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self.terms:
            return mpq(0)
        from gmpy2 import gcd, lcm

        g = mpz(0)
        l = mpz(1)
        for c in self.terms.values():
            g = gcd(g, c.numerator)
            l = lcm(l, c.denominator)
        return mpq(g, l)

    def monomial_content(self):
        """Per-variable minimum exponent across all terms, packed."""
        if not self.terms:
            return 0
        n = len(self.vars)
        mins = None
        for k in self.terms:
            e = unpack(k, n)
            mins = list(e) if mins is None else [min(a, b) for a, b in zip(mins, e)]
            if not any(mins):
                return 0
        return pack(mins)

    def div_monomial(self, key):
        return Polynomial(self.vars, {k - key: c for k, c in self.terms.items()})

    def divexact(self, other):
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return Polynomial(self.vars, {})
        n = len(self.vars)
        lk, lc = other.leading()
        lexp = unpack(lk, n)
        rem = dict(self.terms)
        q = {}
        while rem:
            k = max(rem)
            e = unpack(k, n)
            if any(a < b for a, b in zip(e, lexp)):
                return None
            qk = k - lk
            qc = rem[k] / lc
            q[qk] = qc
            for ok, oc in other.terms.items():
                kk = ok + qk
                v = rem.get(kk, 0) - qc * oc
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        return Polynomial(self.vars, q)

    def __repr__(self):
        from .expr import format_polynomial

        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        from .expr import format_polynomial

        return format_polynomial(self)


def walker_vars(n):
    """Coordinate names (v, x1..xn, u) for an n-dimensional screen."""
    return ("v",) + tuple(f"x{i}" for i in range(1, n + 1)) + ("u",)
