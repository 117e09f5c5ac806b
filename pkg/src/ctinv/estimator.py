"""Estimator-style interface so the inversion composes with the wider
scikit-learn ecosystem (pipelines, parameter search, cloning).

fit(X) consumes rows of (l, delta[, eta]) at the configured energy and
wave number, solves for the shifted angular momenta and reconstructs the
potential; predict(r) evaluates V(r); score(X) is the negative worst
round-trip phase-shift discrepancy.
"""

import numpy as np
from sklearn.base import BaseEstimator

from .domain import PhaseShiftSet, default_grid
from .errors import NumericalDomainError
from .nlsolve import SolveOptions
from .pipeline import MODES, invert


def validate_phase_shift_rows(X):
    """Coerce X to an (N, 3) float array of [l, delta, eta] rows."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] not in (2, 3):
        raise NumericalDomainError(
            "X must be 2-d with columns (l, delta) or (l, delta, eta)")
    if X.shape[1] == 2:
        X = np.column_stack([X, np.ones(len(X))])
    ls = X[:, 0]
    if np.any(ls < 0) or np.any(ls != np.round(ls)):
        raise NumericalDomainError("first column must be non-negative integers")
    if len(np.unique(ls)) != len(ls):
        raise NumericalDomainError("duplicate angular momenta in X")
    if np.any((X[:, 2] <= 0) | (X[:, 2] > 1)):
        raise NumericalDomainError("elasticities must lie in (0, 1]")
    return X


class CoxThompsonInversion(BaseEstimator):
    """Fixed-energy phase-shift-to-potential inversion.

    Parameters
    ----------
    mode : one of "general", "even", "odd", "approx-a", "approx-t",
        "approx-l".
    energy, k : physical scaling (scattering energy and wave number in
        the user's units); the computation itself is dimensionless.
    grid_x_max, grid_n : reconstruction mesh controls (defaults follow
        the input's largest partial wave).
    tol, max_iter, seed : nonlinear-solver controls.
    verify : run the forward round-trip after fitting.

    Attributes (after fit)
    ----------------------
    tset_ : solved TSet of shifted angular momenta.
    potential_ : reconstructed PotentialCurve.
    report_ : full InversionReport including round-trip discrepancies.
    residual_norm_ : sup-norm of the defining residual at the solution.
    """

    def __init__(self, mode="general", energy=1.0, k=1.0, grid_x_max=None,
                 grid_n=2000, tol=1e-12, max_iter=200, seed=0, verify=True,
                 verify_x_max=None):
        self.mode = mode
        self.energy = energy
        self.k = k
        self.grid_x_max = grid_x_max
        self.grid_n = grid_n
        self.tol = tol
        self.max_iter = max_iter
        self.seed = seed
        self.verify = verify
        self.verify_x_max = verify_x_max

    def _problem(self, X):
        rows = validate_phase_shift_rows(X)
        return PhaseShiftSet.create(self.energy, self.k,
                                    [(int(l), d, e) for l, d, e in rows])

    def fit(self, X, y=None):
        """Solve the inversion for phase-shift rows X."""
        if self.mode not in MODES:
            raise NumericalDomainError(f"mode must be one of {MODES}")
        problem = self._problem(X)
        grid = default_grid(problem.s_values, x_max=self.grid_x_max, n=self.grid_n)
        opts = SolveOptions(tol_residual=self.tol, max_iter=self.max_iter,
                            seed=self.seed)
        report = invert(problem, mode=self.mode, grid=grid, opts=opts,
                        verify=self.verify, verify_x_max=self.verify_x_max)
        self.n_features_in_ = np.asarray(X).shape[1]
        self.report_ = report
        self.tset_ = report.tset
        self.potential_ = report.potential
        self.residual_norm_ = report.residual_norm
        return self

    def predict(self, r):
        """Complex potential values V(r) at physical radii r (linear
        interpolation of the reconstructed curve)."""
        if not hasattr(self, "potential_"):
            raise NumericalDomainError("estimator is not fitted")
        r = np.atleast_1d(np.asarray(r, dtype=float))
        curve = self.potential_
        re = np.interp(r, curve.r, curve.v.real)
        im = np.interp(r, curve.r, curve.v.imag)
        return re + 1j * im

    def transform(self, r):
        return self.predict(r)

    def score(self, X, y=None):
        """Negative worst round-trip discrepancy |delta - delta_recomputed|
        against the rows of X (higher is better)."""
        if not hasattr(self, "report_"):
            raise NumericalDomainError("estimator is not fitted")
        rows = validate_phase_shift_rows(X)
        by_l = {int(l): d for l, d, _ in rows}
        worst = 0.0
        for entry in self.report_.roundtrip:
            if entry.l in by_l:
                d = abs(by_l[entry.l] - entry.delta_recomputed)
                d = abs((d + np.pi / 2) % np.pi - np.pi / 2)
                worst = max(worst, d)
        return -worst
