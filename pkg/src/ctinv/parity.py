"""Matrix-inversion-free solutions for single-parity phase-shift sets.

When all contributing partial waves share a parity, the phase-shift
condition collapses to products and a tangent (cotangent): no inverse of
a matrix containing the unknowns appears, so the systems are much easier
for Newton-type solvers.
"""

import numpy as np

from . import nlsolve
from .domain import TSet, check_separation, lam
from .errors import NumericalDomainError

from dataclasses import dataclass

_SOFT_LARGE = 1e8


@dataclass(frozen=True)
class ParityProblem:
    """Phase shifts restricted to even or odd angular momenta."""

    parity: str  # "even" | "odd"
    entries: tuple

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise NumericalDomainError(f"parity must be even or odd, got {self.parity!r}")
        want = 0 if self.parity == "even" else 1
        for e in self.entries:
            if e.l % 2 != want:
                raise NumericalDomainError(f"l = {e.l} has the wrong parity")

    def __len__(self):
        return len(self.entries)

    @property
    def s_values(self):
        return tuple(e.l for e in self.entries)

    @property
    def delta_tildes(self):
        return np.array([e.delta_tilde for e in self.entries])

    @property
    def etas(self):
        return np.array([e.eta for e in self.entries])


def split_parity(problem):
    """Partition a phase-shift set by l mod 2; both halves may be empty."""
    even = tuple(e for e in problem.entries if e.l % 2 == 0)
    odd = tuple(e for e in problem.entries if e.l % 2 == 1)
    return (ParityProblem(parity="even", entries=even),
            ParityProblem(parity="odd", entries=odd))


def _ratio_matrix(t_values, s_values):
    """ratio[i, j] = prod_{l' != l_j}(lam_i - lam_{l'}) / prod_{i' != i}(lam_i - lam_{i'}).

    Returns None if an iterate collides in lambda (soft failure for the
    solver's damping to handle).
    """
    lt = lam(np.asarray(t_values, dtype=complex))
    ls = lam(np.asarray(list(s_values), dtype=float))
    D = lt[:, None] - ls[None, :]
    if np.min(np.abs(D)) < 1e-12:
        return None
    full = np.prod(D, axis=1)
    numer = full[:, None] / D
    E = lt[:, None] - lt[None, :]
    np.fill_diagonal(E, 1.0)
    if np.min(np.abs(E)) < 1e-12:
        return None
    denom = np.prod(E, axis=1)
    return numer / denom[:, None]


def _parity_residual_soft(t_values, s_values, delta_tildes, parity):
    t_values = np.asarray(t_values, dtype=complex)
    n = len(s_values)
    with np.errstate(all="ignore"):
        ratio = _ratio_matrix(t_values, s_values)
        if ratio is None:
            return np.full(n, _SOFT_LARGE, dtype=complex)
        half = 0.5 * np.pi * t_values
        if parity == "even":
            trig = np.tan(half)
            res = np.tan(delta_tildes) + (ratio * trig[:, None]).sum(axis=0)
        else:
            cot = np.cos(half) / np.sin(half)
            res = np.tan(delta_tildes) - (ratio * cot[:, None]).sum(axis=0)
        if not np.all(np.isfinite(res)):
            return np.full(n, _SOFT_LARGE, dtype=complex)
        return res


def even_residual(t_values, problem):
    """Residual of the even-parity condition
    tan(delta~_l) + sum_L ratio_l(L) tan(L pi/2) per l."""
    if problem.parity != "even":
        raise NumericalDomainError("even_residual needs an even-parity problem")
    t_values = np.asarray(t_values, dtype=complex)
    if len(t_values) != len(problem):
        raise NumericalDomainError("need one T member per phase shift")
    check_separation(t_values, problem.s_values)
    return _parity_residual_soft(t_values, problem.s_values,
                                 problem.delta_tildes, "even")


def odd_residual(t_values, problem):
    """Residual of the odd-parity condition
    tan(delta~_l) - sum_L ratio_l(L) cot(L pi/2) per l."""
    if problem.parity != "odd":
        raise NumericalDomainError("odd_residual needs an odd-parity problem")
    t_values = np.asarray(t_values, dtype=complex)
    if len(t_values) != len(problem):
        raise NumericalDomainError("need one T member per phase shift")
    check_separation(t_values, problem.s_values)
    return _parity_residual_soft(t_values, problem.s_values,
                                 problem.delta_tildes, "odd")


def solve_parity(problem, opts=None):
    """Solve the single-parity condition for T_e or T_o.

    Initialized at the one-term values; all-zero input returns an empty
    T-set (the no-scattering limit, reconstructing to q == 0).
    """
    from .approx import one_term
    from .ct_core import nudge_initials, solve_with_lattice_search

    if len(problem) == 0:
        raise NumericalDomainError("empty parity problem")
    if np.all(problem.delta_tildes == 0.0):
        return TSet.create((), parity_tag=problem.parity)
    opts = opts or nlsolve.SolveOptions()
    s_values = problem.s_values
    init = np.array([one_term(e.l, e.delta, e.eta) for e in problem.entries])
    init = nudge_initials(init, s_values)

    def fn(t):
        return _parity_residual_soft(t, s_values, problem.delta_tildes, problem.parity)

    outcome = solve_with_lattice_search(fn, init, s_values,
                                        problem.delta_tildes, opts)
    values = outcome.solution
    if np.all(problem.etas == 1.0) and np.max(np.abs(values.imag)) <= 1e-8:
        values = values.real.astype(complex)
    return TSet.create(values, parity_tag=problem.parity, s_values=s_values)


def coefficient_vectors(tset, problem):
    """Asymptotic expansion coefficients of the transformation kernel.

    Even parity returns a_L (the cos-x coefficients, b_L = 0); odd parity
    returns b_L (the sin-x coefficients, a_L = 0).
    """
    t_values = tset.values
    if len(t_values) != len(problem):
        raise NumericalDomainError("T-set size must match the parity problem")
    lt = lam(t_values)
    ls = lam(np.asarray(list(problem.s_values), dtype=float))
    numer = np.prod(lt[:, None] - ls[None, :], axis=1)
    E = lt[:, None] - lt[None, :]
    np.fill_diagonal(E, 1.0)
    denom = np.prod(E, axis=1)
    half = 0.5 * np.pi * t_values
    if problem.parity == "even":
        trig = np.cos(half)
    else:
        trig = np.sin(half)
    if np.any(np.abs(trig) < 1e-12):
        raise NumericalDomainError(
            "coefficient pole: T member at an integer locus of the parity trig factor")
    return numer / (denom * trig)
