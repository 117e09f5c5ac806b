"""Damped Newton for small dense nonlinear systems over complex unknowns.

The residual is assumed holomorphic in each unknown (true for every
system in this package: rational in L(L+1), entire in the trig factors),
so the Jacobian formed by real-step central differences equals the
complex derivative and Newton can run in complex arithmetic directly.

Escalation: plain damped Newton from the initial point, then restarts
from seeded random perturbations of growing radius, and finally a
simulated-annealing style random search minimizing ||residual||^2
followed by a Newton polish.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError

logger = logging.getLogger(__name__)

_FD_STEP = 1e-7
_TIKHONOV = 1e-12


@dataclass(frozen=True)
class SolveOptions:
    tol_residual: float = 1e-12
    max_iter: int = 200
    damping: float = 0.5
    max_halvings: int = 40
    multistart: tuple = (0.0, 0.05, 0.1, 0.3)
    seed: int = 0
    anneal_steps: int = 4000

    def __post_init__(self):
        if self.tol_residual <= 0.0:
            raise ValueError("tol_residual must be positive")
        radii = tuple(float(r) for r in self.multistart)
        if any(r < 0.0 for r in radii) or list(radii) != sorted(radii):
            raise ValueError("multistart radii must be non-negative ascending")
        object.__setattr__(self, "multistart", radii)


@dataclass(frozen=True)
class SolveOutcome:
    solution: np.ndarray
    residual_norm: float
    iterations: int
    strategy_used: str  # newton | multistart | annealing
    residual_history: tuple = field(default_factory=tuple)


def _norm(r):
    r = np.asarray(r)
    return float(np.max(np.abs(r))) if r.size else 0.0


def _safe_residual(fn, z):
    try:
        r = np.asarray(fn(z), dtype=complex)
    except (ArithmeticError, np.linalg.LinAlgError):
        return None
    if not np.all(np.isfinite(r)):
        return None
    return r


def _jacobian(fn, z, r0):
    n = z.size
    jac = np.empty((n, n), dtype=complex)
    for j in range(n):
        h = _FD_STEP * (1.0 + abs(z[j]))
        zp = z.copy()
        zp[j] += h
        zm = z.copy()
        zm[j] -= h
        rp = _safe_residual(fn, zp)
        rm = _safe_residual(fn, zm)
        if rp is None or rm is None:
            # one-sided fallback at the edge of the residual's domain
            base = rp if rp is not None else rm
            sign = 1.0 if rp is not None else -1.0
            if base is None:
                raise FloatingPointError("residual not finite near Jacobian point")
            jac[:, j] = sign * (base - r0) / h
        else:
            jac[:, j] = (rp - rm) / (2.0 * h)
    return jac


def _newton(fn, z0, opts):
    """Damped Newton; returns (z, norm, iters, history, converged)."""
    z = np.asarray(z0, dtype=complex).copy()
    r = _safe_residual(fn, z)
    if r is None:
        return z, np.inf, 0, (), False
    rn = _norm(r)
    history = [rn]
    for it in range(opts.max_iter):
        if rn <= opts.tol_residual:
            return z, rn, it, tuple(history), True
        try:
            jac = _jacobian(fn, z, r)
        except FloatingPointError:
            break
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            step = None
        if step is None or not np.all(np.isfinite(step)):
            # Tikhonov-regularized retry for numerically singular Jacobians
            n = jac.shape[0]
            jtj = jac.conj().T @ jac + _TIKHONOV * np.eye(n)
            try:
                step = np.linalg.solve(jtj, -jac.conj().T @ r)
            except np.linalg.LinAlgError:
                break
            if not np.all(np.isfinite(step)):
                break
        # backtracking: accept only a residual-reducing step
        lam_factor = 1.0
        accepted = False
        for _ in range(opts.max_halvings):
            zt = z + lam_factor * step
            rt = _safe_residual(fn, zt)
            if rt is not None:
                rtn = _norm(rt)
                if rtn < rn:
                    z, r, rn = zt, rt, rtn
                    history.append(rn)
                    accepted = True
                    break
            lam_factor *= opts.damping
        if not accepted:
            break
    return z, rn, opts.max_iter, tuple(history), rn <= opts.tol_residual


def _anneal(fn, z0, opts, rng):
    """Random-search fallback minimizing ||residual||_inf, geometric cooling."""
    z = np.asarray(z0, dtype=complex).copy()
    r = _safe_residual(fn, z)
    best_z, best_n = z.copy(), _norm(r) if r is not None else np.inf
    cur_n = best_n
    scale = 0.5 * (1.0 + np.max(np.abs(z)))
    temp = 1.0
    for step in range(opts.anneal_steps):
        temp = max(temp * 0.9985, 1e-4)
        prop = z + scale * temp * (rng.standard_normal(z.size)
                                   + 1j * rng.standard_normal(z.size))
        r = _safe_residual(fn, prop)
        if r is None:
            continue
        pn = _norm(r)
        if pn < cur_n or rng.random() < np.exp(-(pn - cur_n) / max(temp * best_n, 1e-300)):
            z, cur_n = prop, pn
            if pn < best_n:
                best_z, best_n = prop.copy(), pn
    return best_z, best_n


def solve(residual_fn, initial, opts=None):
    """Solve residual_fn(z) = 0 for a complex vector z.

    Returns a SolveOutcome on success; raises ConvergenceError carrying
    the best point found otherwise.  Deterministic for fixed inputs and
    options (including the seed of the stochastic fallback).
    """
    opts = opts or SolveOptions()
    z0 = np.atleast_1d(np.asarray(initial, dtype=complex))
    rng = np.random.default_rng(opts.seed)

    best_z, best_n = z0, np.inf
    total_iters = 0

    for i, radius in enumerate(opts.multistart):
        if radius == 0.0:
            start = z0
        else:
            start = z0 + radius * (1.0 + np.abs(z0)) * (
                rng.standard_normal(z0.size) + 1j * rng.standard_normal(z0.size))
        z, rn, iters, history, ok = _newton(residual_fn, start, opts)
        total_iters += iters
        if rn < best_n:
            best_z, best_n = z, rn
        if ok:
            strategy = "newton" if i == 0 else "multistart"
            return SolveOutcome(solution=z, residual_norm=rn, iterations=total_iters,
                                strategy_used=strategy, residual_history=history)
        logger.debug("newton attempt %d (radius %g) stalled at %g", i, radius, rn)

    za, _ = _anneal(residual_fn, best_z, opts, rng)
    z, rn, iters, history, ok = _newton(residual_fn, za, opts)
    total_iters += iters
    if rn < best_n:
        best_z, best_n = z, rn
    if ok:
        return SolveOutcome(solution=z, residual_norm=rn, iterations=total_iters,
                            strategy_used="annealing", residual_history=history)
    raise ConvergenceError(
        f"nonlinear solve failed; best residual {best_n:.3e}",
        best_point=best_z, best_residual=best_n)
