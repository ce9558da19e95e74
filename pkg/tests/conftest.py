import sympy
from gmpy2 import mpq

from walkerhol.exact import format_expr


def to_sympy(f, vars):
    """Independent reading of a RationalFunction through its printed form."""
    syms = {name: sympy.Symbol(name) for name in vars}
    return sympy.sympify(format_expr(f).replace("^", "**"), locals=syms)


def sympy_riemann(g_rows, coords):
    """R_abcd = g_ae R^e_bcd with R^a_bcd = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb."""
    g = sympy.Matrix(g_rows)
    gi = sympy.simplify(g.inv())
    N = len(coords)
    X = [sympy.Symbol(c) for c in coords]
    Gam = [[[sympy.cancel(sum(gi[a, e] * (sympy.diff(g[e, b], X[c]) + sympy.diff(g[e, c], X[b])
                                         - sympy.diff(g[b, c], X[e])) for e in range(N)) / 2)
             for c in range(N)] for b in range(N)] for a in range(N)]

    def Rup(a, b, c, d):
        s = sympy.diff(Gam[a][d][b], X[c]) - sympy.diff(Gam[a][c][b], X[d])
        for e in range(N):
            s += Gam[a][c][e] * Gam[e][d][b] - Gam[a][d][e] * Gam[e][c][b]
        return s

    up = {(a, b, c, d): Rup(a, b, c, d) for a in range(N) for b in range(N)
          for c in range(N) for d in range(N)}
    low = {}
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for d in range(N):
                    low[(a, b, c, d)] = sympy.cancel(sum(g[a, e] * up[(e, b, c, d)] for e in range(N)))
    return low


def Q(x):
    return mpq(x)
