"""End-to-end inversion runs shared by the estimator facade and the CLI."""

import logging

import numpy as np

from . import approx, ct_core, parity, reconstruct
from .domain import InversionReport, RadialGrid, TSet, default_grid
from .errors import NumericalDomainError
from .forward import roundtrip_report
from .nlsolve import SolveOptions

logger = logging.getLogger(__name__)

MODES = ("general", "even", "odd", "approx-a", "approx-t", "approx-l")

#: round-trip verification re-evaluates the potential on a longer grid:
#: the reconstructed curves carry oscillatory ~1/x^2 tails whose truncation
#: would otherwise leak into the recomputed shifts.
VERIFY_X_MAX_MIN = 40.0


def _solve_mode(problem, mode, opts):
    """Returns (tset, residual_fn or None)."""
    if mode == "general":
        tset = ct_core.solve_general(problem, opts)
        return tset, lambda t: ct_core.general_residual(t, problem)
    if mode in ("even", "odd"):
        even, odd = parity.split_parity(problem)
        sub = even if mode == "even" else odd
        if not len(sub):
            raise NumericalDomainError(f"no {mode}-l entries in the input")
        tset = parity.solve_parity(sub, opts)
        res = parity.even_residual if mode == "even" else parity.odd_residual
        return tset, lambda t: res(t, sub)
    if mode == "approx-t":
        return approx.approx_tset_T(problem, opts), None
    if mode == "approx-l":
        return approx.approx_tset_L(problem), None
    raise NumericalDomainError(f"unknown mode {mode!r}")


def _residual_norm(tset, residual_fn):
    if residual_fn is None or len(tset) == 0:
        return 0.0
    r = residual_fn(tset.values)
    return float(np.max(np.abs(r)))


def _mode_s_values(problem, mode):
    if mode in ("even", "odd"):
        even, odd = parity.split_parity(problem)
        return (even if mode == "even" else odd).s_values
    return problem.s_values


def verification_grid(grid, x_max=None):
    """Longer grid with comparable spacing for forward re-solving."""
    xv = x_max if x_max is not None else max(VERIFY_X_MAX_MIN, 2.0 * grid.x_max)
    n = int(round((xv - grid.x_min) / grid.step)) + 1
    n = int(np.clip(n, grid.n, 8000))
    return RadialGrid(x_min=grid.x_min, x_max=float(xv), n=n)


def invert(problem, mode="general", grid=None, opts=None, verify=True,
           verify_x_max=None):
    """Run one inversion: solve for T, reconstruct, optionally round-trip.

    Returns an InversionReport.  For mode approx-a the potential is the
    sum of the two single-parity reconstructions and the reported T-set
    is the union of the parity solutions.
    """
    if mode not in MODES:
        raise NumericalDomainError(f"mode must be one of {MODES}")
    opts = opts or SolveOptions()
    grid = grid or default_grid(problem.s_values)

    if mode == "approx-a":
        even, odd = parity.split_parity(problem)
        members, rnorm = [], 0.0
        for sub, res in ((even, parity.even_residual), (odd, parity.odd_residual)):
            if not len(sub):
                continue
            ts = parity.solve_parity(sub, opts)
            members.extend(ts.members)
            if len(ts):
                rnorm = max(rnorm, float(np.max(np.abs(res(ts.values, sub)))))
        tset = TSet.create(members, parity_tag="union", s_values=problem.s_values)
        curve = approx.approx_potential_A(problem, grid, opts)

        def rebuild(g):
            return approx.approx_potential_A(problem, g, opts)
    else:
        tset, residual_fn = _solve_mode(problem, mode, opts)
        rnorm = _residual_norm(tset, residual_fn)
        s_vals = _mode_s_values(problem, mode)
        curve = reconstruct.potential(tset, s_vals, grid,
                                      energy=problem.energy, k=problem.k)

        def rebuild(g):
            return reconstruct.potential(tset, s_vals, g,
                                         energy=problem.energy, k=problem.k)

    roundtrip = ()
    if verify:
        vgrid = verification_grid(grid, verify_x_max)
        vcurve = rebuild(vgrid)
        target = problem if mode not in ("even", "odd") else \
            problem.subset(_mode_s_values(problem, mode))
        roundtrip = roundtrip_report(target, vcurve)
    return InversionReport(input=problem, tset=tset, residual_norm=rnorm,
                           potential=curve, roundtrip=roundtrip)
