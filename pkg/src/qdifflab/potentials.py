"""Periodic potentials the diffusion models run in.

The cosine A cos(qx) is the workhorse with analytic derivatives; tabulated
one-period data is accepted wherever only period averages or finite-difference
derivatives are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError


@dataclass(frozen=True)
class CosinePotential:
    """U(x) = A cos(q x); A in J, q in 1/m."""

    A: float
    q: float

    def __post_init__(self):
        if self.A < 0:
            raise DomainError("amplitude A must be >= 0")
        if self.q <= 0:
            raise DomainError("wavenumber q must be positive")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.q

    def u(self, x):
        return self.A * np.cos(self.q * np.asarray(x, dtype=float))

    def du(self, x):
        return -self.A * self.q * np.sin(self.q * np.asarray(x, dtype=float))

    def d2u(self, x):
        return -self.A * self.q * self.q * np.cos(
            self.q * np.asarray(x, dtype=float))


class SampledPeriodicPotential:
    """One period of a potential tabulated on a uniform grid.

    `values[i]` is U at x = i * period / n, endpoint excluded.  Evaluation
    interpolates linearly with periodic wraparound; derivatives come from
    central differences of the table, so they demand a minimum resolution.
    """

    #: derivative estimates below this many samples are refused
    MIN_SAMPLES_FOR_DERIVATIVES = 16

    def __init__(self, period: float, values):
        values = np.asarray(values, dtype=float)
        if period <= 0:
            raise DomainError("period must be positive")
        if values.ndim != 1 or values.size < 4:
            raise DomainError("need a 1-d table of at least 4 samples")
        if not np.all(np.isfinite(values)):
            raise DomainError("potential table must be finite")
        self.period = float(period)
        self.values = values.copy()
        self.values.setflags(write=False)
        self._dx = self.period / values.size

    @property
    def q(self) -> float:
        return 2.0 * math.pi / self.period

    def _frac_index(self, x):
        return np.mod(np.asarray(x, dtype=float), self.period) / self._dx

    def u(self, x):
        f = self._frac_index(x)
        i = np.floor(f).astype(int) % self.values.size
        j = (i + 1) % self.values.size
        w = f - np.floor(f)
        return (1.0 - w) * self.values[i] + w * self.values[j]

    def _table_derivative(self, order: int):
        if self.values.size < self.MIN_SAMPLES_FOR_DERIVATIVES:
            raise ResolutionError(
                f"{self.values.size} samples are too few for derivative "
                f"estimates (need >= {self.MIN_SAMPLES_FOR_DERIVATIVES})")
        up = np.roll(self.values, -1)
        dn = np.roll(self.values, 1)
        if order == 1:
            return (up - dn) / (2.0 * self._dx)
        return (up - 2.0 * self.values + dn) / (self._dx * self._dx)

    def du(self, x):
        table = self._table_derivative(1)
        return _interp_periodic(self._frac_index(x), table)

    def d2u(self, x):
        table = self._table_derivative(2)
        return _interp_periodic(self._frac_index(x), table)


def _interp_periodic(frac_idx, table):
    i = np.floor(frac_idx).astype(int) % table.size
    j = (i + 1) % table.size
    w = frac_idx - np.floor(frac_idx)
    return (1.0 - w) * table[i] + w * table[j]
