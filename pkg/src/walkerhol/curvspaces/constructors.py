"""Explicit weak curvature tensors."""

import numpy as np
from gmpy2 import mpq

from ..errors import ConstraintViolated, InvalidSpec
from ..liealg import catalog
from ..liealg.core import bracket
from ..linalg import is_zero, mat, vec, zeros
from .spaces import WeakCurvTensor, wedge


def _check(P):
    bad = P.cyclic_defect()
    if bad:
        raise ConstraintViolated(f"cyclic identity fails on {len(bad)} triple(s), e.g. {bad[0][0]}")
    return P


def _unit(n, i):
    e = zeros(n)
    e[i] = mpq(1)
    return e


def _from_map(h, fn):
    n = h.n
    return _check(WeakCurvTensor.from_images(h, [fn(_unit(n, i)) for i in range(n)]))


def so_pair(S, x):
    """P(y) = Sy ^ x + y ^ Sx for symmetric S."""
    S, x = mat(S), vec(x)
    if not is_zero(S - S.T):
        raise ConstraintViolated("S must be symmetric")
    Sx = S @ x
    return _from_map(catalog.so(len(x)), lambda y: wedge(S @ y, x) + wedge(y, Sx))


def so_p0(S, x):
    """P(y) = Sy ^ x, requiring tr S = 0 and Sx = 0."""
    S, x = mat(S), vec(x)
    if not is_zero(S - S.T):
        raise ConstraintViolated("S must be symmetric")
    if sum(S.diagonal(), mpq(0)):
        raise ConstraintViolated("so_p0 requires tr S = 0")
    if not is_zero(S @ x):
        raise ConstraintViolated("so_p0 requires S x = 0")
    return _from_map(catalog.so(len(x)), lambda y: wedge(S @ y, x))


def so_p1(x):
    """P(y) = x ^ y."""
    x = vec(x)
    return _from_map(catalog.so(len(x)), lambda y: wedge(x, y))


def _g(a, b):
    return sum((p * q for p, q in zip(a, b)), mpq(0))


def u_m(x):
    """P(y) = -1/2 g(x, Jy) J + 1/4 (x ^ y + Jx ^ Jy) in P(u(m))."""
    x = vec(x)
    n = len(x)
    if n % 2:
        raise InvalidSpec("u(m) acts on an even-dimensional space")
    J = catalog.complex_structure(n // 2)
    Jx = J @ x
    h = catalog.u(n // 2)
    return _from_map(
        h,
        lambda y: J * (mpq(-1, 2) * _g(x, J @ y)) + (wedge(x, y) + wedge(Jx, J @ y)) * mpq(1, 4),
    )


def spsp1(x):
    """Quaternionic analogue with J1, J2, J3 in P(sp(k) + sp(1))."""
    x = vec(x)
    n = len(x)
    if n % 4:
        raise InvalidSpec("sp(k)+sp(1) acts on R^(4k)")
    Js = catalog.quaternionic_structures(n // 4)
    h = catalog.spsp1(n // 4)

    def fn(y):
        out = wedge(x, y) * mpq(1, 4)
        for J in Js:
            out = out + J * (mpq(-1, 2) * _g(x, J @ y)) + wedge(J @ x, J @ y) * mpq(1, 4)
        return out

    return _from_map(h, fn)


def adjoint(base, x):
    """P(y) = ad([x, y]) on the adjoint representation of ``base``.

    Vectors are coordinates on base's basis.
    """
    h_ad = catalog.adjoint(base)
    x = vec(x)
    X = base.combine(x)

    def fn(y):
        c = base.coordinates(bracket(X, base.combine(y)))
        return h_ad.combine(c)

    return _from_map(h_ad, fn)


def _realify(X, Y):
    m = X.shape[0]
    out = zeros(2 * m, 2 * m)
    out[:m, :m] = X
    out[:m, m:] = -Y
    out[m:, :m] = Y
    out[m:, m:] = X
    return out


def from_S(kind, m, S):
    """P = S - S_1 built from complex coefficients S[(a, b, c)] = (re, im).

    S(e_a) e_b = sum_c S_acb e_c with S_abc = S_cba; S_1(e_a) e_b =
    sum_c conj(S_abc) e_c, extended anti-linearly in the argument.
    Indices are 0-based.  ``kind`` selects u, su or sp (then m = 2k).
    """
    re = np.full((m, m, m), mpq(0), dtype=object)
    im = np.full((m, m, m), mpq(0), dtype=object)
    for (a, b, c), val in S.items():
        r, i = (val if isinstance(val, (tuple, list)) else (val, 0))
        re[a, b, c] = mpq(r)
        im[a, b, c] = mpq(i)
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if re[a, b, c] != re[c, b, a] or im[a, b, c] != im[c, b, a]:
                    raise ConstraintViolated("S_abc must equal S_cba")
    if kind == "u":
        h = catalog.u(m)
    elif kind == "su":
        h = catalog.su(m)
    elif kind == "sp":
        if m % 2:
            raise InvalidSpec("sp needs an even complex dimension")
        h = catalog.sp(m // 2)
    else:
        raise InvalidSpec(f"unknown from_S kind {kind!r}")
    images_real, images_imag = [], []
    for a in range(m):
        # complex matrices: S(e_a)[c, b] = S_acb, S1(e_a)[c, b] = conj(S_abc)
        SX, SY = zeros(m, m), zeros(m, m)
        TX, TY = zeros(m, m), zeros(m, m)
        for b in range(m):
            for c in range(m):
                SX[c, b], SY[c, b] = re[a, c, b], im[a, c, b]
                TX[c, b], TY[c, b] = re[a, b, c], -im[a, b, c]
        # P(e_a) = S - S1, P(i e_a) = i (S + S1)
        images_real.append(_realify(SX - TX, SY - TY))
        sx, sy = SX + TX, SY + TY
        images_imag.append(_realify(-sy, sx))
    try:
        P = WeakCurvTensor.from_images(h, images_real + images_imag)
    except ConstraintViolated:
        raise ConstraintViolated(f"images of S - S_1 are not in {h.name}") from None
    return _check(P)


def g2_lemma1():
    A = catalog.g2_generator
    imgs = [A(6), A(4) + A(5), A(1) + A(7), A(1), A(4), -A(5) + A(6), A(7)]
    return _check(WeakCurvTensor.from_images(catalog.g2(), imgs))


def spin7_lemma1():
    A = catalog.spin7_generator
    z = zeros(8, 8)
    imgs = [z, -A(14), z, A(21), A(20), A(21) - A(18), A(15) - A(16), A(14) - A(17)]
    return _check(WeakCurvTensor.from_images(catalog.spin7(), imgs))


def build_P(kind, /, **params):
    """Dispatch on a constructor name; see the individual functions."""
    table = {
        "so_pair": so_pair,
        "so_p0": so_p0,
        "so_p1": so_p1,
        "u_m": u_m,
        "spsp1": spsp1,
        "adjoint": adjoint,
        "from_S": from_S,
        "g2_lemma1": g2_lemma1,
        "spin7_lemma1": spin7_lemma1,
    }
    if kind not in table:
        raise InvalidSpec(f"unknown P constructor {kind!r}")
    return table[kind](**params)
