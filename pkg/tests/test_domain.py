import numpy as np
import pytest
from numpy.testing import assert_allclose

from ctinv.domain import (PhaseShiftEntry, PhaseShiftSet, PotentialCurve,
                          RadialGrid, TSet, combine_spin_orbit,
                          complexified_shift, default_grid)
from ctinv.errors import NumericalDomainError


def test_entry_validation():
    with pytest.raises(NumericalDomainError):
        PhaseShiftEntry(l=-1, delta=0.1)
    with pytest.raises(NumericalDomainError):
        PhaseShiftEntry(l=0, delta=0.1, eta=0.0)
    with pytest.raises(NumericalDomainError):
        PhaseShiftEntry(l=0, delta=0.1, eta=1.2)


def test_complexified_shift_consistency():
    # eta * exp(2i delta) = exp(2i delta~)
    for delta, eta in ((0.3, 1.0), (-0.8, 0.6), (1.2, 0.95)):
        dt = complexified_shift(delta, eta)
        assert_allclose(np.exp(2j * dt), eta * np.exp(2j * delta), rtol=1e-14)
    e = PhaseShiftEntry(l=2, delta=0.827, eta=0.580)
    assert_allclose(e.s_matrix, np.exp(2j * e.delta_tilde), rtol=1e-14)


def test_set_sorted_and_unique():
    ps = PhaseShiftSet.create(1.0, 1.0, [(2, 0.1), (0, 0.2), (1, 0.3)])
    assert ps.s_values == (0, 1, 2)
    with pytest.raises(NumericalDomainError):
        PhaseShiftSet.create(1.0, 1.0, [(0, 0.1), (0, 0.2)])
    with pytest.raises(NumericalDomainError):
        PhaseShiftSet.create(-1.0, 1.0, [(0, 0.1)])


def test_tset_rejects_duplicates_and_collisions():
    with pytest.raises(NumericalDomainError):
        TSet.create([0.5, 0.5], parity_tag="general")
    # lambda-collision: L and -L-1 share L(L+1)
    with pytest.raises(NumericalDomainError):
        TSet.create([0.5, -1.5], parity_tag="general")
    with pytest.raises(NumericalDomainError):
        TSet.create([2.0 + 1e-9], parity_tag="general", s_values=(2,))
    ts = TSet.create([0.5, 1.7], parity_tag="even", s_values=(0, 2))
    assert len(ts) == 2
    with pytest.raises(NumericalDomainError):
        TSet(members=(0.1,), parity_tag="bogus")


def test_radial_grid():
    g = RadialGrid(0.01, 12.0, 100)
    assert len(g.points) == 100
    assert_allclose(g.points[0], 0.01)
    assert_allclose(g.step, (12.0 - 0.01) / 99)
    with pytest.raises(NumericalDomainError):
        RadialGrid(0.0, 12.0, 100)
    with pytest.raises(NumericalDomainError):
        RadialGrid(0.1, 12.0, 8)
    g = default_grid((0, 1, 2))
    assert g.x_max == 12.0
    assert default_grid((0, 10)).x_max == 20.0


def test_potential_curve_scaling_and_origin():
    grid = RadialGrid(0.01, 10.0, 64)
    x = grid.points
    q = (x ** 2 - 3.0) + 0j   # quadratic: extrapolation to origin is exact
    c = PotentialCurve(grid=grid, q=q, energy=2.0, k=4.0)
    assert_allclose(c.r, x / 4.0)
    assert_allclose(c.v, 2.0 * q)
    assert_allclose(c.q_at_origin(), -3.0, atol=1e-9)
    assert_allclose(c.v_at_origin(), -6.0, atol=1e-9)
    with pytest.raises(NumericalDomainError):
        PotentialCurve(grid=grid, q=np.full(64, np.nan + 0j), energy=1.0, k=1.0)


def test_combine_spin_orbit():
    # l = 0: the minus component has zero weight
    assert combine_spin_orbit(0, 0.5, 123.0) == 0.5
    assert_allclose(combine_spin_orbit(1, 0.3, 0.0), 0.2, rtol=1e-15)
    got = combine_spin_orbit(2, complex(0.1, 0.05), complex(0.4, -0.01))
    want = (3 * complex(0.1, 0.05) + 2 * complex(0.4, -0.01)) / 5
    assert_allclose(got, want, rtol=1e-15)
    with pytest.raises(NumericalDomainError):
        combine_spin_orbit(-1, 0.1, 0.1)
