"""Generic fixed-energy phase-shift equations for the shifted momenta.

Builds the sine/cosine kernel matrices, forms the shifted reactance
quantities, and solves the resulting nonlinear system for the set T of
shifted angular momenta given one energy's phase shifts.
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from . import nlsolve
from .approx import one_term
from .domain import SEPARATION_TOL, TSet, check_separation, lam
from .errors import ConvergenceError, NumericalDomainError, SingularSystemError

logger = logging.getLogger(__name__)

#: channels with |delta~| above this may sit on another branch of the
#: period-2 trigonometric factors; the solver then scans lattice-shifted
#: initial guesses as well
STRONG_SHIFT = np.pi / 4.0

#: condition number of m_cos above which a warning is logged
COND_WARN = 1e10

#: residual magnitude substituted when an iterate wanders into a pole
SOFT_LARGE = 1e8


@dataclass(frozen=True)
class MMatrices:
    """Kernel matrices indexed (l in S rows, L in T columns):
    entry = {sin, cos}((l - L) pi/2) / (L(L+1) - l(l+1))."""

    m_sin: np.ndarray
    m_cos: np.ndarray

    @property
    def condition_number(self):
        return float(np.linalg.cond(self.m_cos))


@dataclass(frozen=True)
class Reactance:
    """Shifted reactance elements per l in S."""

    k_plus: np.ndarray
    k_minus: np.ndarray


def _m_entries(s_values, t_values):
    ls = np.asarray(list(s_values), dtype=float)
    ts = np.asarray(t_values, dtype=complex)
    diff = ls[:, None] - ts[None, :]
    den = lam(ts)[None, :] - lam(ls)[:, None]
    arg = diff * (np.pi / 2.0)
    return np.sin(arg) / den, np.cos(arg) / den, den


def build_m_matrices(s_values, t_values):
    """Kernel matrices for validated disjoint sets S and T."""
    t_values = np.asarray(t_values, dtype=complex)
    check_separation(t_values, s_values)
    m_sin, m_cos, _ = _m_entries(s_values, t_values)
    m = MMatrices(m_sin=m_sin, m_cos=m_cos)
    cond = m.condition_number
    if cond > COND_WARN:
        logger.warning("m_cos condition number %.3e exceeds %.1e", cond, COND_WARN)
    return m


def _reactance_from_matrices(s_values, m_sin, m_cos):
    ls = np.asarray(list(s_values), dtype=float)
    w_minus = np.exp(-0.5j * np.pi * ls)   # e^{-i l' pi/2}
    w_plus = np.exp(+0.5j * np.pi * ls)
    y_minus = np.linalg.solve(m_cos, w_minus)
    y_plus = np.linalg.solve(m_cos, w_plus)
    phase = np.exp(0.5j * np.pi * ls)
    k_plus = phase * (m_sin @ y_minus)
    k_minus = np.conj(phase) * (m_sin @ y_plus)
    return Reactance(k_plus=k_plus, k_minus=k_minus)


def reactance(s_values, t_values):
    """Shifted reactance elements; requires an invertible m_cos."""
    m = build_m_matrices(s_values, t_values)
    try:
        return _reactance_from_matrices(s_values, m.m_sin, m.m_cos)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"m_cos is singular for T = {t_values}") from exc


def _soft(n):
    return np.full(n, SOFT_LARGE, dtype=complex)


def _residual_soft(t_values, s_values, targets, form="smatrix"):
    """Residual of the phase-shift condition, safe for solver iterates.

    Poles (singular m_cos, 1 - i K^- ~ 0, lambda collisions) yield a
    large finite vector instead of raising, so damped steps can back off.
    """
    t_values = np.asarray(t_values, dtype=complex)
    n = len(s_values)
    with np.errstate(all="ignore"):
        m_sin, m_cos, den = _m_entries(s_values, t_values)
        if not np.all(np.isfinite(m_cos)) or np.min(np.abs(den)) < 1e-12:
            return _soft(n)
        try:
            re = _reactance_from_matrices(s_values, m_sin, m_cos)
        except np.linalg.LinAlgError:
            return _soft(n)
        if form == "smatrix":
            denom = 1.0 - 1j * re.k_minus
            if np.any(np.abs(denom) < 1e-12):
                logger.debug("pole of the rational S form at T = %s", t_values)
                return _soft(n)
            model = (1.0 + 1j * re.k_plus) / denom
            res = targets - model
        else:  # tan form, cross-checking option
            denom = 2.0 + 1j * (re.k_plus - re.k_minus)
            if np.any(np.abs(denom) < 1e-12):
                return _soft(n)
            model = (re.k_plus + re.k_minus) / denom
            res = np.tan(targets) - model
        if not np.all(np.isfinite(res)):
            return _soft(n)
        return res


def general_residual(t_values, problem, form="smatrix"):
    """Residual of S_l^target - (1 + i K_l^+)/(1 - i K_l^-) per l in S.

    form="smatrix" uses S_l = eta exp(2i delta) targets (default, handles
    complex shifts uniformly); form="tan" uses the equivalent tangent
    condition with delta~ targets.
    """
    t_values = np.asarray(t_values, dtype=complex)
    s_values = problem.s_values
    if len(t_values) != len(s_values):
        raise NumericalDomainError("need one T member per phase shift")
    check_separation(t_values, s_values)
    if form == "smatrix":
        targets = problem.s_matrix_targets
    else:
        targets = problem.delta_tildes
    return _residual_soft(t_values, s_values, targets, form=form)


def nudge_initials(t_values, s_values, step=3e-3):
    """Shift initial guesses off any lambda-collision with S or each other.

    The one-term initializer lands exactly on l for zero phase shifts,
    where the kernel matrices are 0/0; a small deterministic shift fixes
    the starting point without affecting the converged root.
    """
    t = np.asarray(t_values, dtype=complex).copy()
    ls = lam(np.asarray(list(s_values), dtype=float))
    for i in range(len(t)):
        for _ in range(200):
            lt = lam(t[i])
            close_s = np.any(np.abs(lt - ls) < 10.0 * SEPARATION_TOL)
            others = np.delete(t, i)
            close_t = others.size and np.any(np.abs(lt - lam(others)) < 10.0 * SEPARATION_TOL)
            if not (close_s or close_t):
                break
            t[i] -= step
    return t


def _truncate_real(values, problem, tol=1e-8):
    # real potentials must come out real; drop FD-Jacobian noise
    if np.all(problem.etas == 1.0) and np.max(np.abs(values.imag)) <= tol:
        return values.real.astype(complex)
    return values


def _spectral_deviation(t_values, s_values):
    """L1 distance between the sorted lambda spectra of T and S."""
    lt = np.sort_complex(lam(np.asarray(t_values, dtype=complex)))
    ls = np.sort(lam(np.asarray(list(s_values), dtype=float)))
    return float(np.sum(np.abs(lt - ls)))


def solve_with_lattice_search(residual_fn, init, s_values, delta_tildes, opts):
    """Escalating root search shared by the generic and parity solvers.

    The trigonometric factors of every phase-shift condition are
    2-periodic in each L, so roots come in lattice families L + 2m.  For
    weak shifts the one-term initial point converges directly; channels
    with |delta~| > pi/4 may live on a shifted branch, so the solver also
    runs plain Newton from lattice-shifted starts and keeps the root with
    the smallest spectral deformation sum |lambda(T) - lambda(S)|; that
    is the set continuously connected to the no-scattering limit T = S.
    Deterministic: combinations are enumerated in a fixed order.
    """
    strong = np.abs(np.asarray(delta_tildes)) > STRONG_SHIFT
    n_strong = int(np.sum(strong))

    candidates = {}
    failure = None
    # base attempt from the one-term point; the annealing fallback is
    # deferred until the lattice scan has had its chance
    base_opts = opts if not n_strong else \
        nlsolve.SolveOptions(tol_residual=opts.tol_residual, max_iter=opts.max_iter,
                             multistart=opts.multistart, seed=opts.seed,
                             anneal_steps=0)
    try:
        out = nlsolve.solve(residual_fn, init, base_opts)
        candidates[tuple(np.round(np.sort_complex(out.solution), 7))] = out
    except ConvergenceError as exc:
        failure = exc

    if n_strong:
        span = (0, -1, 1, -2, 2) if n_strong <= 2 else (0, -1, 1)
        msets = [span if s else (0,) for s in strong]
        plain = nlsolve.SolveOptions(tol_residual=opts.tol_residual,
                                     max_iter=opts.max_iter,
                                     multistart=(0.0,), seed=opts.seed,
                                     anneal_steps=0)
        combos = sorted(itertools.product(*msets),
                        key=lambda c: (sum(abs(m) for m in c), c))
        for combo in combos:
            if not any(combo):
                continue
            start = nudge_initials(init + 2.0 * np.asarray(combo), s_values)
            try:
                out = nlsolve.solve(residual_fn, start, plain)
            except ConvergenceError:
                continue
            key = tuple(np.round(np.sort_complex(out.solution), 7))
            candidates.setdefault(key, out)
    if not candidates and n_strong:
        # last resort: the full escalation including annealing
        try:
            out = nlsolve.solve(residual_fn, init, opts)
            candidates[tuple(np.round(np.sort_complex(out.solution), 7))] = out
        except ConvergenceError as exc:
            failure = exc
    if not candidates:
        raise failure if failure is not None else ConvergenceError("no root found")
    best = min(candidates.values(),
               key=lambda o: _spectral_deviation(o.solution, s_values))
    if len(candidates) > 1:
        logger.info("lattice search kept %d distinct roots; selected deviation %.3g",
                    len(candidates), _spectral_deviation(best.solution, s_values))
    return best


def solve_general(problem, opts=None, form="smatrix"):
    """Solve the generic phase-shift condition for the full set T.

    Unknowns start at the one-term values l - 2 delta~/pi; the returned
    members are sorted by real part.  All-zero input (no scattering) is
    the degenerate limit T -> S; it returns an empty T-set, whose
    reconstruction is identically zero.
    """
    if len(problem) == 0:
        raise NumericalDomainError("empty phase-shift problem")
    if np.all(problem.delta_tildes == 0.0):
        return TSet.create((), parity_tag="general")
    opts = opts or nlsolve.SolveOptions()
    s_values = problem.s_values
    init = np.array([one_term(e.l, e.delta, e.eta) for e in problem.entries])
    init = nudge_initials(init, s_values)
    targets = problem.s_matrix_targets if form == "smatrix" else problem.delta_tildes

    def fn(t):
        return _residual_soft(t, s_values, targets, form=form)

    outcome = solve_with_lattice_search(fn, init, s_values,
                                        problem.delta_tildes, opts)
    values = _truncate_real(outcome.solution, problem)
    return TSet.create(values, parity_tag="general", s_values=s_values)
