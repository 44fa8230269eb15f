"""Overdamped zero-temperature spreading in a periodic potential.

A Gaussian packet in a cosine potential, with friction dominating inertia,
spreads at the rate

    d(sigma^2)/dt = 2 / (b beta_Q I0^2(beta_Q A)),      beta_Q = 4 m sigma^2 / hbar^2,

which integrates to the implicit time law

    x^2 [I0^2(x) - I1^2(x)] = 16 m A^2 t / (hbar^2 b),  x = beta_Q A.

This module evaluates the rate, the time law and its numeric inverse, the
logarithmic long-time asymptote, and the free sub-diffusive limit
sigma^2 = hbar sqrt(t / m b), plus the characteristic scales of the barrier.
All Bessel work goes through the exponentially scaled forms, so arguments up
to a few hundred stay inside double range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import PhysicalSystem
from .errors import ConvergenceError, DomainError, LogDomainError
from .potentials import CosinePotential
from .special import bessel_i_scaled, expand_bracket, find_root


@dataclass(frozen=True)
class QuantumTemperatureState:
    """Dispersion and the momentum-fluctuation energy scale tied to it.

    For a Gaussian packet at minimal uncertainty the momentum dispersion
    supplies an energy hbar^2 / (4 m sigma^2) that plays the role of a
    temperature; the two fields are definitionally coupled.
    """

    sigma_sq: float    # m^2
    beta_q_inv: float  # J

    def __post_init__(self):
        if not (self.sigma_sq > 0 and self.beta_q_inv > 0):
            raise DomainError("sigma_sq and beta_q_inv must be positive")

    @classmethod
    def from_dispersion(cls, sys: PhysicalSystem, sigma_sq: float)\
            -> "QuantumTemperatureState":
        if sigma_sq <= 0:
            raise DomainError("sigma_sq must be positive")
        return cls(sigma_sq=sigma_sq,
                   beta_q_inv=sys.hbar ** 2 / (4.0 * sys.m * sigma_sq))


@dataclass(frozen=True)
class ScaleSet:
    """Characteristic scales of a barrier of height A."""

    lambda_A: float  # m,   hbar / (2 sqrt(2 m A))
    omega_A: float   # 1/s, 4 A / hbar
    t_relax: float   # s,   b / (m omega_A^2)

    def __post_init__(self):
        if not (self.lambda_A > 0 and self.omega_A > 0 and self.t_relax > 0):
            raise DomainError("scales must be positive")


def characteristic_scales(sys: PhysicalSystem, pot: CosinePotential) -> ScaleSet:
    if pot.A <= 0:
        raise DomainError("characteristic scales need a nonzero amplitude")
    omega = 4.0 * pot.A / sys.hbar
    return ScaleSet(
        lambda_A=sys.hbar / (2.0 * math.sqrt(2.0 * sys.m * pot.A)),
        omega_A=omega,
        t_relax=sys.b / (sys.m * omega * omega),
    )


def _x_of_sigma_sq(sigma_sq: float, sys: PhysicalSystem,
                   pot: CosinePotential) -> float:
    # x = beta_Q A = 4 m A sigma^2 / hbar^2
    return 4.0 * sys.m * pot.A * sigma_sq / (sys.hbar * sys.hbar)


def dispersion_rate(sigma_sq: float, sys: PhysicalSystem,
                    pot: CosinePotential) -> float:
    """d(sigma^2)/dt = 2 / (b beta_Q I0^2(beta_Q A)), in m^2/s."""
    if sigma_sq <= 0:
        raise DomainError("sigma_sq must be positive")
    beta_q = 4.0 * sys.m * sigma_sq / (sys.hbar * sys.hbar)
    x = beta_q * pot.A
    i0s = bessel_i_scaled(0, x)
    try:
        damp = math.exp(-2.0 * x)
    except OverflowError:
        damp = 0.0
    return 2.0 * damp / (sys.b * beta_q * i0s * i0s)


def _scaled_time_factor(x: float) -> float:
    """x^2 (I0^2 - I1^2) e^(-2x): the implicit law with the growth removed."""
    if x == 0.0:
        return 0.0
    i0s = bessel_i_scaled(0, x)
    i1s = bessel_i_scaled(1, x)
    return x * x * (i0s - i1s) * (i0s + i1s)


def time_of_dispersion(sigma_sq: float, sys: PhysicalSystem,
                       pot: CosinePotential) -> float:
    """Invert the spreading history: the time at which sigma^2 is reached."""
    if sigma_sq < 0:
        raise DomainError("sigma_sq must be >= 0")
    if pot.A <= 0:
        raise DomainError("the implicit time law needs A > 0 (use "
                          "free_subdiffusion for a flat potential)")
    if sigma_sq == 0.0:
        return 0.0
    x = _x_of_sigma_sq(sigma_sq, sys, pot)
    scale = sys.hbar ** 2 * sys.b / (16.0 * sys.m * pot.A * pot.A)
    try:
        growth = math.exp(2.0 * x)
    except OverflowError:
        return math.inf
    return scale * _scaled_time_factor(x) * growth


def dispersion_of_time(t: float, sys: PhysicalSystem,
                       pot: CosinePotential) -> float:
    """sigma^2(t) by root-finding x in the implicit time law.

    Solved in log-abscissa so that tiny and huge x carry the same relative
    accuracy; the result is re-checked through the forward law to 1e-8.
    """
    if t < 0:
        raise DomainError("t must be >= 0")
    if pot.A <= 0:
        raise DomainError("the implicit time law needs A > 0 (use "
                          "free_subdiffusion for a flat potential)")
    if t == 0.0:
        return 0.0

    rhs = math.log(16.0 * sys.m * pot.A * pot.A * t
                   / (sys.hbar * sys.hbar * sys.b))

    def g(x: float) -> float:
        return math.log(_scaled_time_factor(x)) + 2.0 * x - rhs

    lo, hi = expand_bracket(g, lo=1e-8, hi=1.0)
    u = find_root(lambda w: g(math.exp(w)), (math.log(lo), math.log(hi)))
    x = math.exp(u)
    sigma_sq = sys.hbar ** 2 * x / (4.0 * sys.m * pot.A)

    t_back = time_of_dispersion(sigma_sq, sys, pot)
    if not math.isfinite(t_back) or abs(t_back / t - 1.0) > 1e-8:
        raise ConvergenceError(
            f"inversion round trip missed: t = {t:.6g}, re-evaluated "
            f"{t_back:.6g}")
    return sigma_sq


def log_asymptote_sigma_sq(t: float, sys: PhysicalSystem,
                           pot: CosinePotential) -> float:
    """Long-time law sigma^2 = (hbar^2 / 8 m A) ln(32 pi m A^2 t / hbar^2 b)."""
    if pot.A <= 0:
        raise DomainError("the logarithmic law needs A > 0")
    threshold = sys.hbar ** 2 * sys.b / (32.0 * math.pi * sys.m
                                         * pot.A * pot.A)
    if t <= threshold:
        raise LogDomainError(
            f"t = {t:.6g} s is at or below the log-law domain threshold "
            f"{threshold:.6g} s", threshold=threshold)
    return (sys.hbar ** 2 / (8.0 * sys.m * pot.A)) * math.log(t / threshold)


def free_subdiffusion(t: float, sys: PhysicalSystem) -> float:
    """Flat-potential sub-diffusive law sigma^2 = hbar sqrt(t / m b)."""
    if t < 0:
        raise DomainError("t must be >= 0")
    return sys.hbar * math.sqrt(t / (sys.m * sys.b))
