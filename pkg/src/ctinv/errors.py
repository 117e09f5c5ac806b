"""Exception and warning types shared across the package.

The CLI maps these onto exit codes: parse errors -> 2, solver
non-convergence -> 3, numerical domain errors -> 4.
"""


class CtinvError(Exception):
    """Base class for all package errors."""


class ParseError(CtinvError, ValueError):
    """Malformed input file or configuration."""


class NumericalDomainError(CtinvError, ValueError):
    """Input outside the numerically supported domain (x <= 0, separation
    violations, non-decaying potentials, ...)."""


class SingularSystemError(NumericalDomainError):
    """A linear system required by the method is numerically singular."""


class ConvergenceError(CtinvError, RuntimeError):
    """Nonlinear solve failed; carries the best point found."""

    def __init__(self, message, best_point=None, best_residual=None):
        super().__init__(message)
        self.best_point = best_point
        self.best_residual = best_residual


class AccuracyLossWarning(UserWarning):
    """Evaluation outside the supported accuracy envelope; results are
    returned but may carry fewer correct digits."""
