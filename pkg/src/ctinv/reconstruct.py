"""Potential reconstruction from a solved T-set.

At each grid point the expansion functions A_L(x) of the transformation
kernel solve the dense linear system

    sum_L A_L(x) W[u_L, v_l](x) / (l(l+1) - L(L+1)) = v_l(x),   l in S,

the diagonal kernel is K(x,x) = sum_L A_L(x) u_L(x), and the potential
follows from q(x) = -(2/x^2) (K'(x) - K(x)/x).

Differentiating the linear system in x gives the same system matrix with
right side v_l' - v_l K(x,x)/x^2 (the Wronskian derivative collapses via
dW[u_L, v_l]/dx = u_L v_l (l(l+1) - L(L+1))/x^2), so A_L'(x) costs one
extra solve; derivatives are analytic, never finite differences.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .domain import PotentialCurve, check_separation, lam
from .errors import NumericalDomainError, SingularSystemError
from .specfun import irregular_integer, regular_and_derivative

logger = logging.getLogger(__name__)

COND_LIMIT = 1e14
MAX_CONSECUTIVE_FILLS = 3


@dataclass(frozen=True)
class KernelState:
    """Kernel quantities at one radius."""

    x: float
    a: np.ndarray          # A_L(x)
    da: np.ndarray         # A_L'(x)
    kdiag: complex         # K(x,x)
    dkdiag: complex        # dK(x,x)/dx


def _t_values(tset_or_values):
    if hasattr(tset_or_values, "values"):
        return tset_or_values.values
    return np.asarray(tset_or_values, dtype=complex)


def _basis_on_grid(t_values, s_values, x):
    """u_L, u_L' for L in T and v_l, v_l' for l in S over the grid."""
    x = np.asarray(x, dtype=float)
    nt = len(t_values)
    uT = np.empty((nt, x.size), dtype=complex)
    duT = np.empty_like(uT)
    for i, L in enumerate(t_values):
        uT[i], duT[i] = regular_and_derivative(L, x)
    lmax = int(max(s_values))
    V_all, dV_all = irregular_integer(lmax, x)
    idx = np.asarray(list(s_values), dtype=int)
    return uT, duT, V_all[idx], dV_all[idx]


def _system_matrices(t_values, s_values, uT, duT, V, dV):
    """B[x, l, i] = W[u_{L_i}, v_l](x) / (lam_l - lam_{L_i}).

    Two-sided equilibration: rows vary like x^(-l), columns like
    x^(L+1), so the raw matrix is badly scaled at small x even though
    the balanced core is well conditioned.  Returns the balanced matrix
    plus the row and column scales (solution = z / colscale).
    """
    lt = lam(np.asarray(t_values, dtype=complex))
    ls = lam(np.asarray(list(s_values), dtype=float))
    den = ls[:, None] - lt[None, :]                       # (l, i)
    W = uT[None, :, :] * dV[:, None, :] - duT[None, :, :] * V[:, None, :]
    B = np.transpose(W / den[:, :, None], (2, 0, 1))      # (x, l, i)
    rscale = np.max(np.abs(B), axis=2)
    rscale[rscale == 0.0] = 1.0
    B = B / rscale[:, :, None]
    cscale = np.max(np.abs(B), axis=1)
    cscale[cscale == 0.0] = 1.0
    B = B / cscale[:, None, :]
    return B, rscale, cscale


def _solve_kernel_batch(t_values, s_values, x):
    """A, A', K, K' and a bad-point mask over a grid of x values."""
    t_values = np.asarray(t_values, dtype=complex)
    x = np.asarray(x, dtype=float)
    n = x.size
    nt = len(t_values)
    if nt == 0:
        zero_a = np.zeros((n, 0), dtype=complex)
        return zero_a, zero_a, np.zeros(n, complex), np.zeros(n, complex), \
            np.zeros(n, dtype=bool)

    uT, duT, V, dV = _basis_on_grid(t_values, s_values, x)
    B, rscale, cscale = _system_matrices(t_values, s_values, uT, duT, V, dV)

    with np.errstate(all="ignore"):
        cond = np.linalg.cond(B)
    bad = ~np.isfinite(cond) | (cond > COND_LIMIT)
    good = ~bad

    A = np.zeros((n, nt), dtype=complex)
    dA = np.zeros((n, nt), dtype=complex)
    K = np.zeros(n, dtype=complex)
    dK = np.zeros(n, dtype=complex)
    if good.any():
        rhs1 = (V.T / rscale)[good][:, :, None]
        A_good = np.linalg.solve(B[good], rhs1)[:, :, 0] / cscale[good]
        A[good] = A_good
        K[good] = np.sum(A_good * uT.T[good], axis=1)
        rhs2 = (dV.T - V.T * (K / x ** 2)[:, None]) / rscale
        dA_good = np.linalg.solve(B[good], rhs2[good][:, :, None])[:, :, 0] / cscale[good]
        dA[good] = dA_good
        dK[good] = np.sum(dA_good * uT.T[good] + A[good] * duT.T[good], axis=1)
    if bad.any():
        logger.debug("ill-conditioned kernel systems at %d grid points", int(bad.sum()))
    return A, dA, K, dK, bad


def expansion_coeffs(tset, s_values, x):
    """Expansion-function values A_L(x) at one radius.

    Raises SingularSystemError when the system's condition number
    exceeds 1e14.
    """
    t_values = _t_values(tset)
    check_separation(t_values, s_values)
    if float(x) <= 0.0:
        raise NumericalDomainError("x must be positive")
    A, _, _, _, bad = _solve_kernel_batch(t_values, s_values, np.array([float(x)]))
    if bad[0]:
        raise SingularSystemError(
            f"expansion system singular at x = {x} (condition beyond {COND_LIMIT:.0e})")
    return A[0]


def expansion_coeffs_derivative(tset, s_values, x, a=None, kdiag=None):
    """A_L'(x) at one radius from the differentiated linear system.

    a/kdiag are accepted for interface symmetry; the batch solver
    recomputes them consistently.
    """
    t_values = _t_values(tset)
    check_separation(t_values, s_values)
    _, dA, _, _, bad = _solve_kernel_batch(t_values, s_values, np.array([float(x)]))
    if bad[0]:
        raise SingularSystemError(f"expansion system singular at x = {x}")
    return dA[0]


def kernel_state(tset, s_values, x):
    """Full KernelState at one radius."""
    t_values = _t_values(tset)
    A, dA, K, dK, bad = _solve_kernel_batch(t_values, s_values, np.array([float(x)]))
    if bad[0]:
        raise SingularSystemError(f"expansion system singular at x = {x}")
    return KernelState(x=float(x), a=A[0], da=dA[0], kdiag=K[0], dkdiag=dK[0])


def _fill_bad_points(values, bad, x):
    """Interpolate isolated ill-conditioned points (at most 3 consecutive)."""
    if not bad.any():
        return values
    runs = []
    start = None
    for i, flag in enumerate(bad):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(bad) - 1))
    longest = max(e - s + 1 for s, e in runs)
    if longest > MAX_CONSECUTIVE_FILLS:
        raise SingularSystemError(
            f"{longest} consecutive ill-conditioned grid points; "
            "the reconstruction grid cannot resolve this T-set")
    good = ~bad
    out = values.copy()
    out[bad] = np.interp(x[bad], x[good], values[good].real) + \
        1j * np.interp(x[bad], x[good], values[good].imag)
    return out


def potential(tset, s_values, grid, energy=1.0, k=1.0):
    """Reconstruct the dimensionless potential on a grid.

    Isolated ill-conditioned grid points are filled by local
    interpolation; an empty T-set reconstructs to q == 0.
    """
    t_values = _t_values(tset)
    if len(t_values):
        check_separation(t_values, s_values)
    x = grid.points
    _, _, K, dK, bad = _solve_kernel_batch(t_values, s_values, x)
    with np.errstate(all="ignore"):
        q = -(2.0 / x ** 2) * (dK - K / x)
    bad |= ~np.isfinite(q)
    q = _fill_bad_points(q, bad, x)
    return PotentialCurve(grid=grid, q=q, energy=energy, k=k)


def potential_finite_difference(tset, s_values, grid, energy=1.0, k=1.0):
    """Cross-check variant: central differences of K(x,x)/x instead of the
    analytic kernel derivative.  Interior points only; the ends copy the
    analytic values."""
    t_values = _t_values(tset)
    x = grid.points
    h = grid.step
    _, _, K, dK, bad = _solve_kernel_batch(t_values, s_values, x)
    g = K / x
    with np.errstate(all="ignore"):
        dg = np.empty_like(g)
        dg[1:-1] = (g[2:] - g[:-2]) / (2.0 * h)
        dg[0] = dK[0] / x[0] - K[0] / x[0] ** 2
        dg[-1] = dK[-1] / x[-1] - K[-1] / x[-1] ** 2
        q = -(2.0 / x) * dg
    bad |= ~np.isfinite(q)
    q = _fill_bad_points(q, bad, x)
    return PotentialCurve(grid=grid, q=q, energy=energy, k=k)
