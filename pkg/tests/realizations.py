"""Inputs for metrics with prescribed holonomy, shared by several test files."""

from gmpy2 import mpq

from walkerhol.curvspaces import WeakCurvTensor, build_P
from walkerhol.holonomy import Thm18Input
from walkerhol.liealg import E, LieAlgebraBasis
from walkerhol.linalg import zeros


def so2():
    P = build_P("so_p1", x=[1, 0])
    return P.h, P


def so2_in_R3():
    """so(2) rotating (x1, x2) and fixing x3, with P(e2) = e1 ^ e2."""
    h = LieAlgebraBasis([E(3, 1, 2)], name="so(2)")
    z = zeros(3, 3)
    return h, WeakCurvTensor.from_images(h, [z, -E(3, 1, 2), z])


def so3():
    P = build_P("so_p1", x=[1, 2, 0])
    return P.h, P


def u2():
    P = build_P("u_m", x=[1, 0, 0, 0])
    return P.h, P


def u2_in_R5():
    """u(2) acting on the first four coordinates of R^5."""
    h4, P4 = u2()
    pad = []
    for M in h4:
        B = zeros(5, 5)
        B[:4, :4] = M
        pad.append(B)
    h = LieAlgebraBasis(pad, name="u(2)")
    imgs = []
    for M in P4.images():
        B = zeros(5, 5)
        B[:4, :4] = M
        imgs.append(B)
    imgs.append(zeros(5, 5))
    return h, WeakCurvTensor.from_images(h, imgs)


# the u(2) functional that vanishes on su(2): coefficient of J in the basis of u(2)
U2_PHI = [mpq(0), mpq(1, 2), mpq(0), mpq(1, 2)]


def so2_inputs():
    h, P = so2()
    h3, P3 = so2_in_R3()
    return {
        1: Thm18Input(h, P, 1),
        2: Thm18Input(h, P, 2),
        3: Thm18Input(h, P, 3, phi=[mpq(1)]),
        4: Thm18Input(h3, P3, 4, m=2, psi=[[mpq(1)]]),
    }


def so3_inputs():
    h, P = so3()
    return {1: Thm18Input(h, P, 1), 2: Thm18Input(h, P, 2)}


def so3_abelian_types(type_tag):
    """so(3) is perfect, so types 3 and 4 admit no nonzero phi or psi."""
    h, P = so3()
    if type_tag == 3:
        return Thm18Input(h, P, 3, phi=[mpq(1), mpq(0), mpq(0)])
    # type 4 needs a trivial summand of R^n; so(3) has none on R^3, so this fails too
    return Thm18Input(h, P, 4, m=2, psi=[[mpq(1), mpq(0), mpq(0)]])


def u2_inputs():
    h, P = u2()
    h5, P5 = u2_in_R5()
    return {
        1: Thm18Input(h, P, 1),
        2: Thm18Input(h, P, 2),
        3: Thm18Input(h, P, 3, phi=U2_PHI),
        4: Thm18Input(h5, P5, 4, m=4, psi=[U2_PHI]),
    }


def g2_input():
    P = build_P("g2_lemma1")
    return Thm18Input(P.h, P, 2)


def spin7_input():
    P = build_P("spin7_lemma1")
    return Thm18Input(P.h, P, 2)


# connection forms of the two worked examples, as printed
PRINTED_G2_A = [
    "2/3*(2*x2*x3 + x1*x4 + 2*x2*x4 + 2*x3*x5 + x5*x7)",
    "2/3*(-x1*x3 - x2*x3 - x1*x4 + 2*x3*x6 + x6*x7)",
    "2/3*(-x1*x2 + x2^2 - x3*x4 - x4^2 - x1*x5 - x2*x6)",
    "2/3*(-x1^2 - x1*x2 + x3^2 + x3*x4)",
    "2/3*(-x1*x3 - 2*x1*x7 - x6*x7)",
    "2/3*(-x2*x3 - 2*x2*x7 - x5*x7)",
    "2/3*(x1*x5 + x2*x6 + 2*x5*x6)",
]
PRINTED_SPIN7_A = [
    "-4/3*x7*x8",
    "2/3*(x4^2 + x3*x5 + x4*x6 - x6^2)",
    "-4/3*x2*x5",
    "2/3*(-x2*x4 - 2*x2*x6 - x5*x7 + 2*x6*x8)",
    "2/3*(x2*x3 + 2*x4*x7 + x6*x7)",
    "2/3*(x2*x4 + x2*x6 + x5*x7 - x4*x8)",
    "2/3*(-x4*x5 - 2*x5*x6 + x1*x8)",
    "2/3*(-x4*x6 + x1*x7)",
]


def printed_metric(A):
    from walkerhol.walker import WalkerMetric

    n = len(A)
    h = [["1" if i == j else "0" for j in range(n)] for i in range(n)]
    return WalkerMetric.from_strings(n, h, A, "0")
