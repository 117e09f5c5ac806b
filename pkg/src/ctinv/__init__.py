"""Fixed-energy quantum inverse scattering toolkit.

From a finite set of (possibly complex) scattering phase shifts at one
energy, solve for the shifted angular momenta of the Cox-Thompson
transformation kernel, reconstruct the interaction potential, and verify
by forward-solving the radial equation.
"""

from .approx import approx_potential_A, approx_tset_L, approx_tset_T, one_term
from .ct_core import build_m_matrices, general_residual, reactance, solve_general
from .domain import (InversionReport, PhaseShiftEntry, PhaseShiftSet,
                     PotentialCurve, RadialGrid, TSet, combine_spin_orbit,
                     default_grid)
from .errors import (AccuracyLossWarning, ConvergenceError, CtinvError,
                     NumericalDomainError, ParseError, SingularSystemError)
from .estimator import CoxThompsonInversion
from .forward import ChannelSolution, integrate_radial, roundtrip_report
from .nlsolve import SolveOptions, SolveOutcome, solve
from .parity import (ParityProblem, coefficient_vectors, even_residual,
                     odd_residual, solve_parity, split_parity)
from .pipeline import invert, verification_grid
from .reconstruct import (expansion_coeffs, expansion_coeffs_derivative,
                          kernel_state, potential)
from .specfun import RiccatiPair, cross_wronskian, riccati_bessel

__version__ = "0.1.0"

__all__ = [
    "AccuracyLossWarning", "ChannelSolution", "ConvergenceError",
    "CoxThompsonInversion", "CtinvError", "InversionReport",
    "NumericalDomainError", "ParityProblem", "ParseError", "PhaseShiftEntry",
    "PhaseShiftSet", "PotentialCurve", "RadialGrid", "RiccatiPair",
    "SingularSystemError", "SolveOptions", "SolveOutcome", "TSet",
    "approx_potential_A", "approx_tset_L", "approx_tset_T",
    "build_m_matrices", "coefficient_vectors", "combine_spin_orbit",
    "cross_wronskian", "default_grid", "even_residual", "expansion_coeffs",
    "expansion_coeffs_derivative", "general_residual", "integrate_radial",
    "invert", "kernel_state", "odd_residual", "one_term", "potential",
    "reactance", "riccati_bessel", "roundtrip_report", "solve",
    "solve_general", "solve_parity", "split_parity", "verification_grid",
]
