"""Special-function tests: frozen high-precision oracle values, the
Wronskian identity, order-recurrence consistency, and branch overlap.

Frozen values were generated with the mpmath oracle in _specfun_oracle.py
at 60 decimal digits; a live comparison over random envelope samples runs
as well (mpmath is a test dependency).
"""

import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ctinv.errors import AccuracyLossWarning, NumericalDomainError
from ctinv.specfun import (cross_wronskian, gamma_fn, irregular_integer,
                           regular_and_derivative, riccati_bessel)

from _specfun_oracle import oracle_pair

# frozen from the 60-digit oracle
FROZEN = {
    (0.5, 1.0): (0.5515216202480919, 0.6832722682801685,
                 0.9791050731877794, -0.6001662375619458),
    (3.3, 7.0): (0.31975824071017185, -0.8894231773560748,
                 -1.0360813067157363, -0.24545191394393108),
    (10.0001, 35.0): (0.9199015949814069, -0.4299796605807153,
                      -0.44930450007701152, -0.8770592506427884),
    (complex(-0.581, -0.085), 2.7): (
        complex(-0.41497118440910656, -0.12335496451821581),
        complex(-0.92735314623584637, 0.05678404489085563),
        complex(-0.91188452981473757, 0.05570342353981941),
        complex(0.41686308343241031, 0.12534630894996618)),
}

ENVELOPE_ORDERS = [-0.5, -0.0893, 0.5, 0.9392, 3.3, 7.0001, 10.0001,
                   complex(-0.581, -0.085)]


def test_integer_zero_closed_form():
    x = np.pi / 2.0
    p = riccati_bessel(0, x)
    assert_allclose([p.u, p.du, p.v, p.dv], [1.0, 0.0, 0.0, -1.0], atol=1e-15)


def test_integer_one_closed_form():
    p = riccati_bessel(1, np.pi)
    # u_1 = sin(x)/x - cos(x) at x = pi
    assert_allclose(p.u, 1.0, rtol=1e-14)


@pytest.mark.parametrize("key", sorted(FROZEN, key=str))
def test_frozen_oracle_values(key):
    nu, x = key
    p = riccati_bessel(nu, x)
    u, du, v, dv = FROZEN[key]
    assert_allclose([p.u, p.du, p.v, p.dv], [u, du, v, dv], rtol=1e-11, atol=1e-13)


def test_live_oracle_random_samples():
    rng = np.random.default_rng(42)
    for _ in range(12):
        nu = complex(rng.uniform(-8, 12), rng.uniform(-1.5, 1.5))
        if abs(nu.imag) < 1e-3:
            nu = complex(nu.real, 0.0)
        x = float(np.exp(rng.uniform(np.log(5e-3), np.log(55.0))))
        p = riccati_bessel(nu, x)
        u, du, v, dv = oracle_pair(nu, x)
        scale = max(abs(u), abs(v), 1e-30)
        assert abs(p.u - u) <= 5e-11 * scale
        assert abs(p.v - v) <= 5e-11 * scale
        assert abs(p.du - du) <= 5e-11 * max(abs(du), abs(dv), 1e-30)
        assert abs(p.dv - dv) <= 5e-11 * max(abs(du), abs(dv), 1e-30)


def test_wronskian_identity_envelope():
    xs = np.logspace(-3, np.log10(60.0), 120)
    for nu in ENVELOPE_ORDERS:
        p = riccati_bessel(nu, xs)
        w = p.u * p.dv - p.du * p.v
        assert np.max(np.abs(w + 1.0)) < 1e-10


def test_wronskian_scalar_api():
    p = riccati_bessel(0.25, 2.0)
    assert abs(p.wronskian() + 1.0) < 1e-12


def test_asymptotic_forms_large_x():
    # leading correction to the plane forms is a_1(nu)/x with
    # a_1 = |4 nu^2 - 1|/8; the deviation must sit at that scale and shrink
    for nu in (0.3, 2.5, -0.4):
        tol = 1.5 * (1.0 + abs(4.0 * nu ** 2 - 1.0) / 8.0)
        dev = {}
        for x in (30.0, 60.0):
            p = riccati_bessel(nu, x)
            dev[x] = max(abs(p.u - np.sin(x - nu * np.pi / 2)),
                         abs(p.v - np.cos(x - nu * np.pi / 2)))
            assert dev[x] < tol / x
        assert dev[60.0] < dev[30.0]


def test_continuity_in_order_at_integers():
    x = np.array([0.05, 0.7, 3.0, 11.0, 29.0])
    for l in (0, 1, 4, 9):
        exact = riccati_bessel(l, x)
        for eps in (1e-7, -1e-7):
            p = riccati_bessel(l + eps, x)
            scale = np.maximum(np.abs(exact.u), 1.0)
            assert np.max(np.abs(p.u - exact.u) / scale) < 1e-6
            scale = np.maximum(np.abs(exact.v), 1.0)
            assert np.max(np.abs(p.v - exact.v) / scale) < 1e-6


def test_cross_wronskian_same_order_is_constant():
    for x in (0.3, 2.0, 9.0):
        w = cross_wronskian(2, 2, x)
        assert_allclose(w, -1.0, rtol=1e-12, atol=1e-12)


def test_cross_wronskian_frozen_value():
    # W[u_0.9386, v_0](2.0), 60-digit oracle
    w = cross_wronskian(0.9386, 0, 2.0)
    assert_allclose(w, -0.6297063855314463, rtol=1e-11)


def test_cross_wronskian_derivative_law():
    # d/dx W[u_L, v_l] = u_L v_l (l(l+1) - L(L+1)) / x^2
    L, l = 1.37, 3
    h = 1e-5
    for x in (0.8, 2.4, 7.7, 19.0):
        dw_fd = (cross_wronskian(L, l, x + h) - cross_wronskian(L, l, x - h)) / (2 * h)
        pL = riccati_bessel(L, x)
        pl = riccati_bessel(l, x)
        dw = pL.u * pl.v * (l * (l + 1) - L * (L + 1)) / x ** 2
        assert abs(dw_fd - dw) < 1e-7 * (1.0 + abs(dw))


def test_branch_overlap():
    # series and asymptotic branches agree in the overlap band
    from ctinv.specfun import _asym_uv, _u_series, _v_series_region
    xs = np.linspace(32.0, 50.0, 10)
    for nu in (0.0, 1.7, -0.45, complex(3.0, 0.5)):
        ua, va, ok = _asym_uv(nu, xs)
        assert ok.all()
        us = _u_series(nu, xs)
        vs = _v_series_region(complex(nu), xs, {})
        assert np.max(np.abs(ua - us)) < 1e-9
        assert np.max(np.abs(va - vs)) < 1e-9


def test_domain_error_nonpositive_x():
    with pytest.raises(NumericalDomainError):
        riccati_bessel(1.0, 0.0)
    with pytest.raises(NumericalDomainError):
        riccati_bessel(1.0, -3.0)


def test_envelope_warning():
    with pytest.warns(AccuracyLossWarning):
        riccati_bessel(25.0, 1.0)
    with pytest.warns(AccuracyLossWarning):
        riccati_bessel(0.5 + 1e-6, 1.0)  # near-half-integer annulus


def test_gamma_function_basics():
    assert_allclose(gamma_fn(0.5), np.sqrt(np.pi), rtol=1e-13)
    assert_allclose(gamma_fn(6), 120.0, rtol=1e-13)
    z = complex(2.3, -1.1)
    assert_allclose(gamma_fn(z + 1), z * gamma_fn(z), rtol=1e-12)
    assert gamma_fn(3.7).imag == 0.0


def test_irregular_integer_fast_path_matches_generic():
    x = np.linspace(0.05, 25.0, 40)
    V, dV = irregular_integer(6, x)
    for l in (0, 1, 4, 6):
        p = riccati_bessel(l, x)
        assert_allclose(V[l], p.v, rtol=1e-10, atol=1e-10)
        assert_allclose(dV[l], p.dv, rtol=1e-9, atol=1e-9)


def test_regular_and_derivative_matches_pair():
    x = np.linspace(0.02, 35.0, 30)
    for nu in (0.31, complex(1.2, -0.4)):
        u, du = regular_and_derivative(nu, x)
        p = riccati_bessel(nu, x)
        assert_allclose(u, p.u, rtol=1e-12, atol=1e-14)
        assert_allclose(du, p.du, rtol=1e-12, atol=1e-14)


def test_half_integer_orders():
    # half-integer nu exercises the integer-cylinder second-kind path
    for nu in (-0.5, 0.5, 2.5, -1.5):
        p = riccati_bessel(nu, 1.7)
        assert abs(p.wronskian() + 1.0) < 1e-11
