"""Approximation schemes built on the single-parity solutions.

Three levels: A adds the two single-parity potentials, T unifies the two
solved T-sets before one reconstruction, L skips solving entirely and
uses the closed one-term values.  Every T-set produced here feeds the
same reconstruction path as the generic solve.
"""

import numpy as np

from .domain import TSet, complexified_shift
from .errors import NumericalDomainError
from .parity import solve_parity, split_parity


def one_term(l, delta, eta=1.0):
    """Total-decoupling shift L = l - 2 delta~/pi.

    Exact for a single partial wave; real when eta = 1.
    """
    if not (0.0 < eta <= 1.0):
        raise NumericalDomainError(f"eta must lie in (0, 1], got {eta}")
    value = l - 2.0 * complexified_shift(delta, eta) / np.pi
    return value.real + 0.0j if eta == 1.0 else value


def approx_tset_L(problem):
    """One-term T-set: apply the closed formula per partial wave.

    Raises if the result collides with S (e.g. exactly zero shifts).
    """
    members = [one_term(e.l, e.delta, e.eta) for e in problem.entries]
    return TSet.create(members, parity_tag="one-term", s_values=problem.s_values)


def approx_tset_T(problem, opts=None):
    """Union of the two single-parity solutions, re-validated as one set."""
    even, odd = split_parity(problem)
    members = []
    for sub in (even, odd):
        if len(sub):
            members.extend(solve_parity(sub, opts).members)
    return TSet.create(members, parity_tag="union", s_values=problem.s_values)


def approx_potential_A(problem, grid, opts=None):
    """Sum of the two single-parity reconstructions, q_e(x) + q_o(x).

    Single-parity input reduces to that parity's plain reconstruction;
    an all-zero problem gives the zero curve.
    """
    from .reconstruct import potential
    from .domain import PotentialCurve

    even, odd = split_parity(problem)
    q = np.zeros(grid.n, dtype=complex)
    for sub in (even, odd):
        if not len(sub):
            continue
        tset = solve_parity(sub, opts)
        curve = potential(tset, sub.s_values, grid,
                          energy=problem.energy, k=problem.k)
        q = q + curve.q
    return PotentialCurve(grid=grid, q=q, energy=problem.energy, k=problem.k)
