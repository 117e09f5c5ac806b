"""Vectorized double-double (two-float) arithmetic.

Each extended-precision number is a pair of float64 arrays (hi, lo) with
hi + lo representing the value to ~32 significant digits.  Used by the
special-function series whose partial sums cancel by many orders of
magnitude: plain compensated summation only repairs accumulation error,
while the term recurrence itself must be carried at extended precision.

All functions broadcast like the underlying numpy operations.
"""

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def fast_two_sum(a, b):
    # requires |a| >= |b| componentwise
    s = a + b
    err = b - (s - a)
    return s, err


def two_prod(a, b):
    p = a * b
    ah = _SPLITTER * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLITTER * b
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def dd_add(xh, xl, yh, yl):
    s, e = two_sum(xh, yh)
    e = e + (xl + yl)
    return fast_two_sum(s, e)


def dd_neg(xh, xl):
    return -xh, -xl


def dd_mul(xh, xl, yh, yl):
    p, e = two_prod(xh, yh)
    e = e + (xh * yl + xl * yh)
    return fast_two_sum(p, e)


def dd_mul_float(xh, xl, c):
    p, e = two_prod(xh, c)
    e = e + xl * c
    return fast_two_sum(p, e)


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    th, tl = dd_mul(q1, np.zeros_like(q1), yh, yl)
    rh, rl = dd_add(xh, xl, -th, -tl)
    q2 = (rh + rl) / yh
    return fast_two_sum(q1, q2)


# Complex double-double: tuples (re_hi, re_lo, im_hi, im_lo).

def cdd_from_complex(z, like=None):
    z = np.asarray(z, dtype=complex)
    re = np.real(z).astype(float)
    im = np.imag(z).astype(float)
    if like is not None:
        re = np.broadcast_to(re, np.shape(like)).copy()
        im = np.broadcast_to(im, np.shape(like)).copy()
    return re, np.zeros_like(re), im, np.zeros_like(im)


def cdd_to_complex(z):
    rh, rl, ih, il = z
    return (rh + rl) + 1j * (ih + il)


def cdd_add(z, w):
    zrh, zrl, zih, zil = z
    wrh, wrl, wih, wil = w
    rh, rl = dd_add(zrh, zrl, wrh, wrl)
    ih, il = dd_add(zih, zil, wih, wil)
    return rh, rl, ih, il


def cdd_mul(z, w):
    zrh, zrl, zih, zil = z
    wrh, wrl, wih, wil = w
    ah, al = dd_mul(zrh, zrl, wrh, wrl)
    bh, bl = dd_mul(zih, zil, wih, wil)
    rh, rl = dd_add(ah, al, -bh, -bl)
    ch, cl = dd_mul(zrh, zrl, wih, wil)
    dh, dl = dd_mul(zih, zil, wrh, wrl)
    ih, il = dd_add(ch, cl, dh, dl)
    return rh, rl, ih, il


def cdd_mul_dd(z, yh, yl):
    # complex dd times real dd
    zrh, zrl, zih, zil = z
    rh, rl = dd_mul(zrh, zrl, yh, yl)
    ih, il = dd_mul(zih, zil, yh, yl)
    return rh, rl, ih, il


def cdd_div(z, w):
    wrh, wrl, wih, wil = w
    ah, al = dd_mul(wrh, wrl, wrh, wrl)
    bh, bl = dd_mul(wih, wil, wih, wil)
    dh, dl = dd_add(ah, al, bh, bl)  # |w|^2, real dd
    conj_w = (wrh, wrl, -wih, -wil)
    nrh, nrl, nih, nil = cdd_mul(z, conj_w)
    rh, rl = dd_div(nrh, nrl, dh, dl)
    ih, il = dd_div(nih, nil, dh, dl)
    return rh, rl, ih, il


def cdd_abs_hi(z):
    rh, _, ih, _ = z
    return np.hypot(rh, ih)
