"""Riccati-Bessel functions of general (real or complex) order.

u_nu(x) and v_nu(x) are the regular and irregular solutions of the free
radial equation  y'' = (nu(nu+1)/x^2 - 1) y, normalized by the large-x
asymptotics

    u_nu(x) -> sin(x - nu*pi/2),      v_nu(x) -> cos(x - nu*pi/2),

which fixes the Wronskian  u v' - u' v = -1  for every order and x > 0.

Evaluation strategy
-------------------
Ascending power series about x = 0 below a per-order switch point, the
large-argument (Hankel-type) expansion beyond it.  The series term
recurrence and accumulation run in double-double arithmetic because the
alternating sum cancels by ~e^x/(pi x); the asymptotic branch is summed
adaptively and truncated at its smallest term.  The two branches overlap
with discrepancy well below 1e-9 (checked by the test suite).

The irregular solution at non-integer order comes from the reflection

    v_nu = (u_{-nu-1} + sin(nu*pi) u_nu) / cos(nu*pi),

which degenerates at real half-integer nu; those orders map to integer
cylinder orders and are evaluated through the second-kind log series
plus stable upward order recurrence.  Within |nu - half-integer| < 1e-4
(excluding the exact value) the reflection loses digits and an
AccuracyLossWarning is raised.

Derivatives use the order recurrences

    u_nu' = ((nu+1)/x) u_nu - u_{nu+1},    v_nu' = v_{nu-1} - (nu/x) v_nu,

each chosen to avoid cancellation at small x.

Supported envelope: |Re nu| <= 20, |Im nu| <= 2, 0 < x <= 60 with
relative accuracy <= 1e-9; outside it results are still returned with an
AccuracyLossWarning.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import _ddarith as dd
from .errors import AccuracyLossWarning, NumericalDomainError

__all__ = ["RiccatiPair", "riccati_bessel", "cross_wronskian",
           "regular_and_derivative", "irregular_integer"]

RE_ORDER_MAX = 20.0
IM_ORDER_MAX = 2.0
X_MAX = 60.0

_SQRT_PI = 1.7724538509055160273
_EULER_HI = 0.5772156649015329
_EULER_LO = -4.942915152430645e-18

# Lanczos approximation, g = 7, 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SERIES_MAX_TERMS = 600
_ASYM_MAX_TERMS = 90


@dataclass(frozen=True)
class RiccatiPair:
    """Regular/irregular solution values and x-derivatives at one order."""

    u: complex
    du: complex
    v: complex
    dv: complex

    def wronskian(self):
        return self.u * self.dv - self.du * self.v


def _sinpi(z):
    # sin(pi z) with argument reduction, accurate near the zeros
    z = np.asarray(z)
    n = np.round(np.real(z))
    r = z - n
    return np.where(np.mod(n, 2) == 0, 1.0, -1.0) * np.sin(np.pi * r)


def _cospi(z):
    z = np.asarray(z)
    n = np.round(np.real(z))
    r = z - n
    return np.where(np.mod(n, 2) == 0, 1.0, -1.0) * np.cos(np.pi * r)


def gamma_fn(z):
    """Gamma function for real or complex scalar argument (Lanczos)."""
    zc = complex(z)
    if zc.real < 0.5:
        s = complex(_sinpi(zc))
        if s == 0.0:
            raise NumericalDomainError(f"gamma pole at z = {zc}")
        out = np.pi / (s * gamma_fn(1.0 - zc))
    else:
        w = zc - 1.0
        acc = _LANCZOS_COEF[0]
        for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
            acc = acc + c / (w + i)
        t = w + _LANCZOS_G + 0.5
        out = np.sqrt(2.0 * np.pi) * t ** (w + 0.5) * np.exp(-t) * acc
    if isinstance(z, (int, float)) or (isinstance(z, complex) and z.imag == 0.0):
        if abs(out.imag) <= 1e-12 * abs(out.real):
            return complex(out.real, 0.0)
    return out


def _is_half_integer(nu):
    return nu.imag == 0.0 and float(nu.real + 0.5).is_integer()


def _is_near_half_integer(nu, tol=1e-4):
    d = abs(complex(nu) - (np.round(nu.real + 0.5) - 0.5))
    return 0.0 < d < tol


def _series_0f1(c, x):
    """sum_m t_m with t_0 = 1, t_{m+1} = t_m * (-x^2/4)/((m+1)(m+c)).

    Double-double accumulation; returns (complex sum, max |term|).
    """
    x = np.asarray(x, dtype=float)
    qh, ql = dd.two_prod(x, x)
    qh, ql = -0.25 * qh, -0.25 * ql
    t = dd.cdd_from_complex(np.ones_like(x) + 0j)
    s = dd.cdd_from_complex(np.ones_like(x) + 0j)
    maxmag = np.ones_like(x)
    cr, ci = complex(c).real, complex(c).imag
    for m in range(_SERIES_MAX_TERMS):
        t = dd.cdd_mul_dd(t, qh, ql)
        arh, arl = dd.two_sum(float(m), cr)
        drh, drl = dd.dd_mul_float(arh, arl, m + 1.0)
        dih, dil = dd.dd_mul_float(ci, 0.0, m + 1.0)
        t = dd.cdd_div(t, (np.asarray(drh), np.asarray(drl),
                           np.asarray(dih), np.asarray(dil)))
        s = dd.cdd_add(s, t)
        tm = dd.cdd_abs_hi(t)
        maxmag = np.maximum(maxmag, tm)
        if np.all(tm <= 1e-34 * maxmag + 1e-320):
            break
    return dd.cdd_to_complex(s), maxmag


def _u_series(nu, x):
    """Regular solution via the ascending series (series branch)."""
    nu = complex(nu)
    if _is_half_integer(nu) and nu.real <= -1.5:
        m = int(round(-(nu.real + 0.5)))
        return (-1.0) ** m * _u_series(m - 0.5, x)
    x = np.asarray(x, dtype=float)
    s, _ = _series_0f1(nu + 1.5, x)
    pref = (_SQRT_PI / gamma_fn(nu + 1.5)) * np.exp((nu + 1.0) * np.log(0.5 * x))
    if nu.imag == 0.0:
        pref = np.real(pref) + 0.0j
    return pref * s


def _asym_uv(nu, x):
    """Hankel-type expansion; returns (u, v, converged mask)."""
    nu = complex(nu)
    x = np.asarray(x, dtype=float)
    zz = (2.0 * nu + 1.0) ** 2
    n = x.shape
    fF = np.ones(n, dtype=complex)
    fG = np.ones(n, dtype=complex)
    F = np.ones(n, dtype=complex)
    G = np.ones(n, dtype=complex)
    active = np.ones(n, dtype=bool)
    prev = np.full(n, np.inf)
    minterm = np.full(n, np.inf)
    for k in range(_ASYM_MAX_TERMS):
        ratio = (zz - (2.0 * k + 1.0) ** 2) / (8.0 * x * (k + 1.0))
        fF = fF * (1j * ratio)
        fG = fG * (-1j * ratio)
        t = np.abs(fF)
        active &= ~(t > prev)
        F = np.where(active, F + fF, F)
        G = np.where(active, G + fG, G)
        minterm = np.where(active, np.minimum(minterm, t), minterm)
        prev = t
        active &= ~(t <= 1e-17 * (np.abs(F) + np.abs(G)))
        if not active.any():
            break
    scale = np.maximum(np.abs(F) + np.abs(G), 1.0)
    ok = minterm <= 1e-12 * scale
    P = 0.5 * (F + G)
    Q = (F - G) / 2j
    chi = x - nu * np.pi / 2.0
    sc, cc = np.sin(chi), np.cos(chi)
    u = sc * P + cc * Q
    v = cc * P - sc * Q
    if nu.imag == 0.0:
        u = np.real(u) + 0.0j
        v = np.real(v) + 0.0j
    return u, v, ok


def _j01_y01_dd(x):
    """Cylinder J_0, J_1, Y_0, Y_1 on a real grid, double-double internals."""
    x = np.asarray(x, dtype=float)
    wh, wl = dd.two_prod(x, x)
    wh, wl = -0.25 * wh, -0.25 * wl          # -x^2/4
    one = np.ones_like(x)
    zero = np.zeros_like(x)
    p0h, p0l = one.copy(), zero.copy()       # (-w)^k / (k!)^2
    p1h, p1l = one.copy(), zero.copy()       # (-w)^k / (k!(k+1)!)
    j0h, j0l = one.copy(), zero.copy()
    j1h, j1l = one.copy(), zero.copy()
    h0h, h0l = zero.copy(), zero.copy()      # sum -H_k p0_k, k >= 1
    h1h, h1l = one * 1.0, zero.copy()        # sum (H_k + H_{k+1}) p1_k, k >= 0
    Hh, Hl = 0.0, 0.0                        # harmonic number H_k
    maxmag = np.ones_like(x)
    def recip(den):
        q = 1.0 / den
        ph, pe = dd.two_prod(q, den)
        return q, ((1.0 - ph) - pe) / den

    for k in range(_SERIES_MAX_TERMS):
        kk = k + 1.0
        # H_{k+1} in double-double
        q, ql = recip(kk)
        Hh, Hl = dd.dd_add(Hh, Hl, q, ql)
        # p0_{k+1} = p0_k * (-x^2/4) / (k+1)^2; (k+1)^2 exact in float64
        p0h, p0l = dd.dd_mul(p0h, p0l, wh, wl)
        p0h, p0l = dd.dd_div(p0h, p0l, kk * kk, 0.0)
        j0h, j0l = dd.dd_add(j0h, j0l, p0h, p0l)
        th, tl = dd.dd_mul(p0h, p0l, Hh, Hl)
        h0h, h0l = dd.dd_add(h0h, h0l, -th, -tl)
        # p1_{k+1} = p1_k * (-x^2/4) / ((k+1)(k+2))
        p1h, p1l = dd.dd_mul(p1h, p1l, wh, wl)
        p1h, p1l = dd.dd_div(p1h, p1l, kk * (kk + 1.0), 0.0)
        j1h, j1l = dd.dd_add(j1h, j1l, p1h, p1l)
        # term index k+1 needs H_{k+1} + H_{k+2} = 2 H_{k+1} + 1/(k+2)
        q2, q2l = recip(kk + 1.0)
        gh, gl = dd.dd_mul_float(Hh, Hl, 2.0)
        gh, gl = dd.dd_add(gh, gl, q2, q2l)
        th, tl = dd.dd_mul(p1h, p1l, gh, gl)
        h1h, h1l = dd.dd_add(h1h, h1l, th, tl)
        tm = np.abs(p0h) * (1.0 + Hh)
        maxmag = np.maximum(maxmag, tm)
        if np.all(tm <= 1e-34 * maxmag + 1e-320):
            break
    j0 = j0h + j0l
    j1 = 0.5 * x * (j1h + j1l)
    lg = np.log(0.5 * x)
    lgh, lgl = dd.dd_add(lg, 0.0, _EULER_HI, _EULER_LO)
    y0h, y0l = dd.dd_mul(j0h, j0l, lgh, lgl)
    y0h, y0l = dd.dd_add(y0h, y0l, h0h, h0l)
    y0 = (2.0 / np.pi) * (y0h + y0l)
    t1h, t1l = dd.dd_mul(j1h, j1l, lgh, lgl)
    y1 = (2.0 / np.pi) * (0.5 * x * (t1h + t1l)) - 2.0 / (np.pi * x) \
        - (x / (2.0 * np.pi)) * (h1h + h1l)
    return j0, j1, y0, y1


def _v_half_integer(nu, x):
    """v at exact real half-integer order via integer cylinder orders."""
    x = np.asarray(x, dtype=float)
    m = int(round(nu.real + 0.5))
    sign = 1.0
    if m < 0:
        sign = (-1.0) ** (-m)
        m = -m
    _, _, y0, y1 = _j01_y01_dd(x)
    if m == 0:
        ym = y0
    elif m == 1:
        ym = y1
    else:
        ya, yb = y0, y1
        for n in range(1, m):
            ya, yb = yb, (2.0 * n / x) * yb - ya
        ym = yb
    return (-sign * np.sqrt(0.5 * np.pi * x) * ym) + 0.0j


def _v_series_region(nu, x, u_cache):
    """Irregular solution on the series branch (reflection or half-integer)."""
    nu = complex(nu)
    if _is_half_integer(nu):
        return _v_half_integer(nu, x)

    def u_of(order):
        key = (round(order.real, 12), round(order.imag, 12))
        if key not in u_cache:
            u_cache[key] = _u_series(order, x)
        return u_cache[key]

    num = u_of(-nu - 1.0) + _sinpi(nu) * u_of(nu)
    v = num / _cospi(nu)
    if nu.imag == 0.0:
        v = np.real(v) + 0.0j
    return v


def _uv_bundle(nu, x):
    """u, du, v, dv at complex order nu over a positive real grid."""
    nu = complex(nu)
    x = np.asarray(x, dtype=float)
    u = np.empty(x.shape, dtype=complex)
    v = np.empty_like(u)
    up1 = np.empty_like(u)
    vm1 = np.empty_like(u)

    switch = max(30.0, 2.2 * abs(nu) + 3.0)
    am = x >= switch
    sm = ~am
    if am.any():
        xs = x[am]
        u0, v0, ok0 = _asym_uv(nu, xs)
        ua, _, oka = _asym_uv(nu + 1.0, xs)
        _, vb, okb = _asym_uv(nu - 1.0, xs)
        ok = ok0 & oka & okb
        idx = np.flatnonzero(am)
        good = idx[ok]
        u[good] = u0[ok]
        v[good] = v0[ok]
        up1[good] = ua[ok]
        vm1[good] = vb[ok]
        sm[idx[~ok]] = True

    if sm.any():
        xs = x[sm]
        u_cache = {}

        def u_of(order):
            order = complex(order)
            key = (round(order.real, 12), round(order.imag, 12))
            if key not in u_cache:
                u_cache[key] = _u_series(order, xs)
            return u_cache[key]

        u[sm] = u_of(nu)
        up1[sm] = u_of(nu + 1.0)
        v[sm] = _v_series_region(nu, xs, u_cache)
        vm1[sm] = _v_series_region(nu - 1.0, xs, u_cache)

    du = ((nu + 1.0) / x) * u - up1
    dv = vm1 - (nu / x) * v
    return u, du, v, dv


def _check_domain(nu, x):
    x = np.asarray(x, dtype=float)
    if x.size and np.any(x <= 0.0):
        raise NumericalDomainError("riccati_bessel requires x > 0")
    msgs = []
    if abs(nu.real) > RE_ORDER_MAX or abs(nu.imag) > IM_ORDER_MAX:
        msgs.append(f"order {nu} outside supported envelope "
                    f"|Re| <= {RE_ORDER_MAX}, |Im| <= {IM_ORDER_MAX}")
    if x.size and np.any(x > X_MAX):
        msgs.append(f"argument beyond x = {X_MAX}")
    if _is_near_half_integer(nu) or _is_near_half_integer(nu - 1.0):
        msgs.append(f"order {nu} within 1e-4 of a half-integer; the "
                    "irregular-solution reflection loses accuracy")
    if abs(nu) >= 18.0 and x.size and np.any(x > 50.0):
        msgs.append("large order combined with x > 50: asymptotic series "
                    "bottoms out near 1e-7 relative accuracy")
    for m in msgs:
        warnings.warn(m, AccuracyLossWarning, stacklevel=3)


def riccati_bessel(order, x):
    """Evaluate u_nu, v_nu and their x-derivatives.

    Parameters
    ----------
    order : real or complex order nu.
    x : positive float or 1-d array of positive floats.

    Returns
    -------
    RiccatiPair with complex scalars (scalar x) or complex arrays.
    """
    nu = complex(order)
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(nu, xa)
    u, du, v, dv = _uv_bundle(nu, xa)
    if scalar:
        return RiccatiPair(u=u[0], du=du[0], v=v[0], dv=dv[0])
    return RiccatiPair(u=u, du=du, v=v, dv=dv)


def cross_wronskian(big_order, small_order, x):
    """W[u_L, v_l](x) = u_L v_l' - u_L' v_l for mixed orders."""
    pl = riccati_bessel(big_order, x)
    ps = riccati_bessel(small_order, x)
    return pl.u * ps.dv - pl.du * ps.v


def regular_and_derivative(order, x):
    """(u_nu, u_nu') over a grid; cheaper than the full pair."""
    nu = complex(order)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(nu, xa)
    u = np.empty(xa.shape, dtype=complex)
    up1 = np.empty_like(u)
    switch = max(30.0, 2.2 * abs(nu) + 3.0)
    am = xa >= switch
    sm = ~am
    if am.any():
        xs = xa[am]
        u0, _, ok0 = _asym_uv(nu, xs)
        ua, _, oka = _asym_uv(nu + 1.0, xs)
        ok = ok0 & oka
        idx = np.flatnonzero(am)
        u[idx[ok]] = u0[ok]
        up1[idx[ok]] = ua[ok]
        sm[idx[~ok]] = True
    if sm.any():
        xs = xa[sm]
        u[sm] = _u_series(nu, xs)
        up1[sm] = _u_series(nu + 1.0, xs)
    du = ((nu + 1.0) / xa) * u - up1
    return u, du


def irregular_integer(lmax, x):
    """v_l and v_l' for all integer l = 0..lmax over a grid.

    Stable upward order recurrence from the closed forms at l = 0, 1;
    the irregular solution dominates, so the recurrence does not lose
    accuracy in either oscillatory or growing regimes.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise NumericalDomainError("irregular_integer requires x > 0")
    n = int(lmax) + 1
    V = np.empty((max(n, 2), x.size), dtype=complex)
    V[0] = np.cos(x)
    V[1] = np.cos(x) / x + np.sin(x)
    for l in range(1, n - 1):
        V[l + 1] = ((2.0 * l + 1.0) / x) * V[l] - V[l - 1]
    dV = np.empty((n, x.size), dtype=complex)
    dV[0] = -np.sin(x)
    for l in range(1, n):
        dV[l] = V[l - 1] - (l / x) * V[l]
    return V[:n], dV
