"""Core data model: phase-shift inputs, T-sets, grids, potentials, reports.

All computation is dimensionless in x = k*r and q = V/E; the energy and
wave number fields are scaling metadata applied only when physical
curves are produced.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalDomainError

#: minimum separation in lambda = L(L+1) between members of T, and between
#: T and S; keeps the 1/(l(l+1) - L(L+1)) denominators away from zero.
SEPARATION_TOL = 1e-6


def lam(order):
    """lambda(nu) = nu(nu+1), the combination every equation depends on."""
    order = np.asarray(order)
    return order * (order + 1.0)


def complexified_shift(delta, eta):
    """delta~ = delta - (i/2) ln(eta), so exp(2i delta~) = eta exp(2i delta)."""
    return complex(delta) - 0.5j * np.log(eta)


@dataclass(frozen=True)
class PhaseShiftEntry:
    """One partial wave: angular momentum l, phase shift (rad), elasticity."""

    l: int
    delta: float
    eta: float = 1.0

    def __post_init__(self):
        if self.l < 0 or int(self.l) != self.l:
            raise NumericalDomainError(f"l must be a non-negative integer, got {self.l}")
        if not (0.0 < self.eta <= 1.0):
            raise NumericalDomainError(f"eta must lie in (0, 1], got {self.eta}")

    @property
    def delta_tilde(self):
        return complexified_shift(self.delta, self.eta)

    @property
    def s_matrix(self):
        """S_l = eta * exp(2i delta)."""
        return self.eta * np.exp(2j * self.delta)


@dataclass(frozen=True)
class PhaseShiftSet:
    """Phase shifts at one energy; entries sorted ascending in l."""

    energy: float
    k: float
    entries: tuple

    def __post_init__(self):
        if self.energy <= 0.0 or self.k <= 0.0:
            raise NumericalDomainError("energy and k must be positive")
        ls = [e.l for e in self.entries]
        if len(set(ls)) != len(ls):
            raise NumericalDomainError(f"duplicate angular momenta: {ls}")
        object.__setattr__(self, "entries",
                           tuple(sorted(self.entries, key=lambda e: e.l)))

    @classmethod
    def create(cls, energy, k, rows):
        """rows: iterable of (l, delta[, eta]) tuples or PhaseShiftEntry."""
        entries = []
        for row in rows:
            if isinstance(row, PhaseShiftEntry):
                entries.append(row)
            else:
                entries.append(PhaseShiftEntry(*row))
        return cls(energy=float(energy), k=float(k), entries=tuple(entries))

    def __len__(self):
        return len(self.entries)

    @property
    def s_values(self):
        return tuple(e.l for e in self.entries)

    @property
    def deltas(self):
        return np.array([e.delta for e in self.entries])

    @property
    def etas(self):
        return np.array([e.eta for e in self.entries])

    @property
    def delta_tildes(self):
        return np.array([e.delta_tilde for e in self.entries])

    @property
    def s_matrix_targets(self):
        return np.array([e.s_matrix for e in self.entries])

    def subset(self, ls):
        keep = tuple(e for e in self.entries if e.l in set(ls))
        return PhaseShiftSet(energy=self.energy, k=self.k, entries=keep)


def check_separation(members, s_values=None, tol=SEPARATION_TOL):
    """Enforce pairwise distinctness of T and disjointness from S in lambda.

    Returns None or raises NumericalDomainError naming the colliding pair.
    """
    members = np.asarray(members, dtype=complex)
    lm = lam(members)
    n = len(members)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(lm[i] - lm[j]) <= tol:
                raise NumericalDomainError(
                    f"T members too close in L(L+1): {members[i]} and {members[j]}")
    if s_values is not None:
        ls = lam(np.asarray(list(s_values), dtype=float))
        for i in range(n):
            for j, l in enumerate(s_values):
                if abs(lm[i] - ls[j]) <= tol:
                    raise NumericalDomainError(
                        f"T member {members[i]} collides with l = {l} in L(L+1)")


@dataclass(frozen=True)
class TSet:
    """Solved set of shifted angular momenta (generally non-integer)."""

    members: tuple
    parity_tag: str = "general"

    _TAGS = ("general", "even", "odd", "union", "one-term")

    def __post_init__(self):
        if self.parity_tag not in self._TAGS:
            raise NumericalDomainError(f"unknown parity tag {self.parity_tag!r}")
        object.__setattr__(self, "members",
                           tuple(complex(m) for m in self.members))

    @classmethod
    def create(cls, members, parity_tag="general", s_values=None):
        """Validated constructor: rejects duplicate or S-colliding members."""
        members = tuple(sorted((complex(m) for m in members),
                               key=lambda z: (z.real, z.imag)))
        check_separation(members, s_values)
        return cls(members=members, parity_tag=parity_tag)

    def __len__(self):
        return len(self.members)

    @property
    def values(self):
        return np.array(self.members, dtype=complex)

    @property
    def is_real(self):
        return all(m.imag == 0.0 for m in self.members)


@dataclass(frozen=True)
class RadialGrid:
    """Uniform mesh in the dimensionless radial variable x = k*r."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if self.x_min <= 0.0 or self.x_min >= self.x_max:
            raise NumericalDomainError("need 0 < x_min < x_max")
        if self.n < 16:
            raise NumericalDomainError("grid needs at least 16 points")

    @property
    def points(self):
        return np.linspace(self.x_min, self.x_max, self.n)

    @property
    def step(self):
        return (self.x_max - self.x_min) / (self.n - 1)


def default_grid(s_values, x_max=None, n=2000):
    """Default reconstruction mesh: covers the classically relevant region
    of the largest partial wave plus an asymptotic tail."""
    if x_max is None:
        lmax = max(s_values) if len(s_values) else 0
        x_max = max(12.0, 2.0 * float(lmax))
    return RadialGrid(x_min=1e-2, x_max=float(x_max), n=int(n))


@dataclass(frozen=True)
class PotentialCurve:
    """Dimensionless potential q(x) on a grid, with physical scaling.

    V(r) = energy * q(k*r); finite values everywhere on the grid.
    """

    grid: RadialGrid
    q: np.ndarray
    energy: float
    k: float

    def __post_init__(self):
        q = np.asarray(self.q, dtype=complex)
        if q.shape != (self.grid.n,):
            raise NumericalDomainError("q must match the grid point count")
        if not np.all(np.isfinite(q)):
            raise NumericalDomainError("potential contains non-finite values")
        object.__setattr__(self, "q", q)

    @property
    def x(self):
        return self.grid.points

    @property
    def r(self):
        return self.grid.points / self.k

    @property
    def v(self):
        """Physical potential values on the grid."""
        return self.energy * self.q

    def q_at_origin(self):
        """Quadratic extrapolation of q to x = 0 from the three smallest
        grid points."""
        x = self.grid.points[:3]
        c = np.polyfit(x, self.q[:3].real, 2)
        ci = np.polyfit(x, self.q[:3].imag, 2)
        return complex(np.polyval(c, 0.0), np.polyval(ci, 0.0))

    def v_at_origin(self):
        return self.energy * self.q_at_origin()


@dataclass(frozen=True)
class RoundTripEntry:
    """Per-channel round-trip discrepancy."""

    l: int
    delta_orig: float
    eta_orig: float
    delta_recomputed: float
    eta_recomputed: float

    @property
    def delta_diff(self):
        return abs(self.delta_orig - self.delta_recomputed)

    @property
    def eta_diff(self):
        return abs(self.eta_orig - self.eta_recomputed)


@dataclass(frozen=True)
class InversionReport:
    """Everything one inversion run produces."""

    input: PhaseShiftSet
    tset: TSet
    residual_norm: float
    potential: PotentialCurve
    roundtrip: tuple = field(default_factory=tuple)


def combine_spin_orbit(l, delta_plus, delta_minus):
    """Weighted spin-orbit combination of the two split phase shifts:
    [(l+1) d+ + l d-] / (2l+1).  Accepts complex shifts."""
    if l < 0:
        raise NumericalDomainError("l must be non-negative")
    return ((l + 1.0) * complex(delta_plus) + l * complex(delta_minus)) / (2.0 * l + 1.0)
