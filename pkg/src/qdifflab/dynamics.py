"""Dimensionless dispersion dynamics of a damped (optionally bound) wave packet.

The position dispersion sigma^2(t) of a Gaussian packet with friction b and
mass m reduces, in the variables

    xi^2 = 2 b sigma^2 / hbar,        tau = b t / m,

to a single damped Ermakov-type equation

    xi'' + xi' + alpha^2 xi = xi^(-3),        alpha = m omega0 / b,

with xi'(0) = 0.  alpha = 0 is the free packet; alpha > 0 adds a harmonic
well whose stationary dispersion is xi^2 = 1/alpha.  This module integrates
that equation, carries the unit maps in both directions, and provides the
closed-form short- and long-time laws used as cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .constants import HBAR, K_B
from .errors import DomainError, IntegrationError

#: xi below this is treated as a collapse onto the singular axis (never
#: expected for the admitted initial data; guarded anyway).
XI_FLOOR = 1e-8

#: the solver runs this much tighter than the requested tolerance, so that
#: the dense output satisfies the ODE residual bound checked in the tests
_INTERNAL_TOL_FACTOR = 1e-3


@dataclass(frozen=True)
class PhysicalSystem:
    """A particle with friction, and the packet it starts from.

    Parameters are SI throughout.  The constants are fields so that scaled
    ("natural unit") systems can be built in tests and scenarios.
    """

    m: float                  # mass, kg
    b: float                  # friction coefficient, kg/s
    sigma0_sq: float          # initial position dispersion, m^2
    T: Optional[float] = None # temperature, K (only some consumers need it)
    omega0: float = 0.0       # harmonic trap frequency, 1/s
    hbar: float = HBAR
    k_B: float = K_B

    def __post_init__(self):
        if not (self.m > 0 and self.b > 0 and self.sigma0_sq > 0):
            raise DomainError("m, b and sigma0_sq must all be positive")
        if self.omega0 < 0:
            raise DomainError("omega0 must be >= 0")
        if self.T is not None and self.T <= 0:
            raise DomainError("T must be positive when given")
        if not (self.hbar > 0 and self.k_B > 0):
            raise DomainError("constants must be positive")


@dataclass(frozen=True)
class DimensionlessParams:
    """Inputs of one dimensionless integration run."""

    xi0_sq: float
    alpha: float = 0.0
    tau_end: float = 100.0
    rel_tol: float = 1e-8
    abs_tol: float = 1e-11
    n_samples: int = 2000
    spacing: str = "linear"      # "linear" | "log"
    initial_rate: float = 0.0    # d(xi)/d(tau) at tau = 0; extension hook

    def __post_init__(self):
        if self.xi0_sq <= 0:
            raise DomainError("xi0_sq must be positive")
        if self.alpha < 0:
            raise DomainError("alpha must be >= 0")
        if self.tau_end <= 0:
            raise DomainError("tau_end must be positive")
        if not (0 < self.rel_tol < 1e-2 and 0 < self.abs_tol < 1e-2):
            raise DomainError("tolerances must sit in (0, 1e-2)")
        if self.n_samples < 2:
            raise DomainError("need at least 2 output samples")
        if self.spacing not in ("linear", "log"):
            raise DomainError(f"unknown spacing {self.spacing!r}")


class PhysicalTrajectory(NamedTuple):
    """sigma^2(t) samples in SI units."""

    t: np.ndarray         # s
    sigma_sq: np.ndarray  # m^2


@dataclass(frozen=True)
class Trajectory:
    """Sampled dimensionless dispersion history.

    Arrays are read-only.  `dense` evaluates the underlying continuous
    solution (returning the (xi, dxi) state) anywhere inside the window;
    extractors use it instead of re-differencing the samples.
    """

    tau: np.ndarray
    xi: np.ndarray
    dxi: np.ndarray
    params: DimensionlessParams
    dense: Optional[Callable[[float], np.ndarray]] = field(
        default=None, repr=False, compare=False)

    def __post_init__(self):
        tau, xi, dxi = (np.asarray(a, dtype=float) for a in (self.tau, self.xi, self.dxi))
        if not (tau.shape == xi.shape == dxi.shape and tau.ndim == 1):
            raise DomainError("tau, xi, dxi must be 1-d arrays of equal length")
        if tau[0] != 0.0 or np.any(np.diff(tau) <= 0):
            raise DomainError("tau must increase strictly from 0")
        if np.any(xi <= 0.0):
            raise DomainError("xi must stay positive")
        if abs(xi[0] ** 2 - self.params.xi0_sq) > 1e-12 * max(1.0, self.params.xi0_sq):
            raise DomainError("first sample must carry the initial dispersion")
        if abs(dxi[0] - self.params.initial_rate) > 1e-12:
            raise DomainError("first sample must carry the initial rate")
        for a in (tau, xi, dxi):
            a.setflags(write=False)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "dxi", dxi)

    @property
    def xi_sq(self) -> np.ndarray:
        return self.xi * self.xi

    @property
    def rate(self) -> np.ndarray:
        """d(xi^2)/d(tau) = 2 xi dxi at the samples."""
        return 2.0 * self.xi * self.dxi


def _sample_grid(params: DimensionlessParams) -> np.ndarray:
    if params.spacing == "linear":
        return np.linspace(0.0, params.tau_end, params.n_samples)
    # log grid keeps the first sample at 0 so initial-condition invariants hold
    start = params.tau_end * 1e-6
    return np.concatenate(([0.0], np.geomspace(start, params.tau_end, params.n_samples - 1)))


def integrate_dispersion(params: DimensionlessParams) -> Trajectory:
    """Integrate xi'' + xi' + alpha^2 xi = xi^(-3) from rest.

    Adaptive embedded Runge-Kutta (order 4/5) with dense output; the
    returned trajectory samples `params.n_samples` points on the requested
    grid and keeps the continuous solution for refinement work.
    """
    alpha_sq = params.alpha ** 2

    def rhs(_tau, y):
        xi, v = y
        return (v, xi ** -3 - v - alpha_sq * xi)

    def floor_event(_tau, y):
        return y[0] - XI_FLOOR

    floor_event.terminal = True
    floor_event.direction = -1

    y0 = (math.sqrt(params.xi0_sq), params.initial_rate)
    sol = solve_ivp(
        rhs,
        (0.0, params.tau_end),
        y0,
        method="RK45",
        t_eval=_sample_grid(params),
        dense_output=True,
        events=floor_event,
        rtol=max(params.rel_tol * _INTERNAL_TOL_FACTOR, 1e-13),
        atol=max(params.abs_tol * _INTERNAL_TOL_FACTOR, 1e-14),
    )
    if sol.t_events[0].size:
        raise IntegrationError(
            f"xi crossed the {XI_FLOOR} floor at tau = {sol.t_events[0][0]:.6g}")
    if not sol.success:
        raise IntegrationError(f"integration failed: {sol.message}")

    return Trajectory(tau=sol.t, xi=sol.y[0], dxi=sol.y[1],
                      params=params, dense=sol.sol)


# ---------------------------------------------------------------------------
# closed-form limits
# ---------------------------------------------------------------------------

def short_time_xi_sq(xi0_sq: float, tau):
    """Ballistic law xi^2 = xi0^2 + tau^2 / xi0^2 (valid tau << 1)."""
    if xi0_sq <= 0:
        raise DomainError("xi0_sq must be positive")
    tau = np.asarray(tau, dtype=float)
    return xi0_sq + tau * tau / xi0_sq


def long_time_xi_sq(xi0_sq: float, tau):
    """Free spreading envelope xi^2 = sqrt(xi0^4 + 4 tau) (valid tau >> 1)."""
    if xi0_sq <= 0:
        raise DomainError("xi0_sq must be positive")
    tau = np.asarray(tau, dtype=float)
    return np.sqrt(xi0_sq * xi0_sq + 4.0 * tau)


def vacuum_sigma_sq(sys: PhysicalSystem, t):
    """Frictionless packet: sigma^2 = sigma0^2 + (hbar t / 2 m sigma0)^2."""
    t = np.asarray(t, dtype=float)
    spread = sys.hbar * t / (2.0 * sys.m * math.sqrt(sys.sigma0_sq))
    return sys.sigma0_sq + spread * spread


# ---------------------------------------------------------------------------
# unit maps
# ---------------------------------------------------------------------------

def to_dimensionless(sys: PhysicalSystem, t_end: Optional[float] = None,
                     **overrides) -> DimensionlessParams:
    """Map a physical system onto the dimensionless parameter set.

    xi0^2 = 2 b sigma0^2 / hbar and alpha = m omega0 / b; a physical horizon
    t_end (seconds) maps onto tau_end = b t_end / m.  Extra keyword
    arguments pass through to `DimensionlessParams`.
    """
    if t_end is not None:
        overrides["tau_end"] = sys.b * t_end / sys.m
    return DimensionlessParams(
        xi0_sq=2.0 * sys.b * sys.sigma0_sq / sys.hbar,
        alpha=sys.m * sys.omega0 / sys.b,
        **overrides,
    )


def to_physical(traj: Trajectory, sys: PhysicalSystem) -> PhysicalTrajectory:
    """Map a dimensionless trajectory back to (t, sigma^2) in SI units."""
    return PhysicalTrajectory(
        t=traj.tau * (sys.m / sys.b),
        sigma_sq=traj.xi_sq * (sys.hbar / (2.0 * sys.b)),
    )
