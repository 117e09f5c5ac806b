import numpy as np
import pytest
from numpy.testing import assert_allclose

from ctinv.errors import ConvergenceError
from ctinv.nlsolve import SolveOptions, _anneal, solve


def test_linear_scalar():
    out = solve(lambda z: z - 3.0, [0.0])
    assert_allclose(out.solution, [3.0], rtol=1e-12)
    assert out.strategy_used == "newton"


def test_textbook_quadratic():
    out = solve(lambda z: z ** 2 - 4.0, [1.0])
    assert_allclose(out.solution, [2.0], rtol=1e-10)


def _bisect(fn, lo, hi, iters=200):
    flo = fn(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def test_tan_equation_vs_bisection_oracle():
    # oracle first: bisection on the same scalar equation
    root = _bisect(lambda t: np.tan(t * np.pi / 2) - 1.0, 0.1, 0.9)
    assert_allclose(root, 0.5, atol=1e-12)
    out = solve(lambda z: np.tan(z * np.pi / 2) - 1.0, [0.4])
    assert_allclose(out.solution.real, root, atol=1e-10)


def test_complex_system():
    def fn(z):
        return np.array([z[0] ** 2 + z[1] - 1j, z[0] + z[1] ** 2 + 0.5])
    out = solve(fn, [0.3 + 0.1j, -0.2])
    assert out.residual_norm <= 1e-12
    assert np.max(np.abs(fn(out.solution))) <= 1e-12


def test_deterministic():
    def fn(z):
        return np.array([np.cos(z[0]) - z[1], z[0] * z[1] - 0.8])
    opts = SolveOptions(seed=123)
    a = solve(fn, [5.0, 5.0], opts)
    b = solve(fn, [5.0, 5.0], opts)
    assert np.array_equal(a.solution, b.solution)
    assert a.strategy_used == b.strategy_used


def test_monotone_history():
    def fn(z):
        return np.array([z[0] ** 3 - 2.0 * z[0] + 2.0])
    out = solve(fn, [1.5])
    h = np.array(out.residual_history)
    assert np.all(np.diff(h) <= 0.0)


def test_multistart_recovers_from_bad_start():
    # residual with a flat spot that stalls plain Newton
    def fn(z):
        return np.array([np.tanh(z[0]) ** 3])
    out = solve(fn, [8.0], SolveOptions(tol_residual=1e-10, seed=5))
    assert abs(np.tanh(out.solution[0])) ** 3 <= 1e-10


def test_anneal_unit():
    rng = np.random.default_rng(0)
    opts = SolveOptions(seed=0, anneal_steps=3000)
    z, n = _anneal(lambda z: np.array([(z[0] - 2.0) * (z[0] + 1.5)]),
                   np.array([10.0 + 0j]), opts, rng)
    assert n < 0.5  # random search reaches one of the basins


def test_nonconvergence_reports_best():
    def fn(z):
        return np.array([z[0] * 0 + 1.0])  # no root anywhere
    with pytest.raises(ConvergenceError) as err:
        solve(fn, [0.0], SolveOptions(max_iter=10, anneal_steps=50))
    assert err.value.best_residual is not None
    assert err.value.best_point is not None


def test_singular_jacobian_tikhonov():
    # J = 0 at the start; the regularized step must still make progress
    out = solve(lambda z: z ** 3 - 8.0, [0.0])
    assert_allclose(out.solution.real, 2.0, atol=1e-8)


def test_options_validation():
    with pytest.raises(ValueError):
        SolveOptions(tol_residual=0.0)
    with pytest.raises(ValueError):
        SolveOptions(multistart=(0.3, 0.1))
