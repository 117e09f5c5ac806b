"""Independent high-precision oracle for the Riccati-Bessel pair.

Defines u/v through mpmath's cylinder functions at 60 decimal digits,
with derivatives by high-precision numerical differentiation, fully
independent of the package's series/asymptotic evaluation path.
"""

import mpmath as mp

mp.mp.dps = 60


def _u(nu, x):
    return mp.sqrt(mp.pi * x / 2) * mp.besselj(nu + mp.mpf(1) / 2, x)


def _v(nu, x):
    return -mp.sqrt(mp.pi * x / 2) * mp.bessely(nu + mp.mpf(1) / 2, x)


def oracle_pair(nu, x):
    """(u, du, v, dv) as python complex."""
    nu = mp.mpc(nu)
    x = mp.mpf(repr(float(x)))
    u = _u(nu, x)
    v = _v(nu, x)
    du = mp.diff(lambda t: _u(nu, t), x)
    dv = mp.diff(lambda t: _v(nu, t), x)
    return complex(u), complex(du), complex(v), complex(dv)


def oracle_expansion_system(t_values, s_values, x):
    """Solve the kernel expansion linear system at one x in mpmath.

    Duplicate implementation built directly from the defining relation:
    sum_L A_L W[u_L, v_l]/(l(l+1) - L(L+1)) = v_l.
    """
    n = len(t_values)
    x = mp.mpf(repr(float(x)))
    rows = []
    rhs = []
    for l in s_values:
        lam_l = mp.mpf(l) * (l + 1)
        row = []
        for L in t_values:
            Lm = mp.mpc(L)
            lam_L = Lm * (Lm + 1)
            w = _u(Lm, x) * mp.diff(lambda t: _v(mp.mpf(l), t), x) \
                - mp.diff(lambda t: _u(Lm, t), x) * _v(mp.mpf(l), x)
            row.append(w / (lam_l - lam_L))
        rows.append(row)
        rhs.append(_v(mp.mpf(l), x))
    sol = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
    return [complex(sol[i]) for i in range(n)]
