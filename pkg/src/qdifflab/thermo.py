"""Semiclassical hopping diffusion at finite temperature.

Everything here lives at finite temperature.  The central small parameter is
the thermal de Broglie wavelength

    lambda_T = hbar / (2 sqrt(m k_B T)),

which controls the quantum-to-Einstein diffusion ratio, the effective
potential a hopping particle actually sees,

    U_eff = [1 - lambda_T^2 q^2 (1 - beta U / 3) / 2] U,

and through it the effective diffusivity in a periodic landscape: the exact
period-average formula, its Bessel closed form for the linearized cosine,
and the Arrhenius limit with the tunneling-reduced activation energy
(2 - lambda_T^2 q^2) A.  Molar energies are converted at the boundary, never
guessed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy.integrate import quad

from .constants import HBAR, K_B, N_A
from .errors import (DomainError, IntegrationError, SemiclassicalDomainError,
                     ValidityWarning)
from .potentials import CosinePotential, SampledPeriodicPotential
from .report import DiffusionReport


def thermal_wavelength(m: float, T: float, hbar: float = HBAR,
                       k_B: float = K_B) -> float:
    """lambda_T = hbar / (2 sqrt(m k_B T)) in metres."""
    if m <= 0 or T <= 0:
        raise DomainError("mass and temperature must be positive")
    return hbar / (2.0 * math.sqrt(m * k_B * T))


def crossover_temperature(m: float, q: float, hbar: float = HBAR,
                          k_B: float = K_B) -> float:
    """T_q = hbar^2 q^2 / (4 m k_B): stationary point of the effective
    reciprocal temperature, below which quantum effects dominate hopping."""
    if m <= 0 or q <= 0:
        raise DomainError("mass and wavenumber must be positive")
    return hbar * hbar * q * q / (4.0 * m * k_B)


def free_diffusion_temperature(m: float, q: float, hbar: float = HBAR,
                               k_B: float = K_B) -> float:
    """Temperature at which lambda_T^2 q^2 = 2 and the barrier vanishes;
    equals crossover_temperature / 2 identically."""
    if m <= 0 or q <= 0:
        raise DomainError("mass and wavenumber must be positive")
    return hbar * hbar * q * q / (8.0 * m * k_B)


@dataclass(frozen=True)
class ThermoSystem:
    """A particle in a cosine landscape coupled to a heat bath.

    Derived quantities (beta, lambda_T, Einstein D, the tunneling parameter
    lambda_T^2 q^2) are properties so they can never drift out of sync with
    the primary fields.
    """

    m: float   # kg
    b: float   # kg/s
    T: float   # K
    A: float   # J, barrier amplitude (A >= 0)
    q: float   # 1/m
    hbar: float = HBAR
    k_B: float = K_B

    def __post_init__(self):
        if not (self.m > 0 and self.b > 0 and self.T > 0 and self.q > 0):
            raise DomainError("m, b, T, q must all be positive")
        if self.A < 0:
            raise DomainError("amplitude A must be >= 0")
        if not (self.hbar > 0 and self.k_B > 0):
            raise DomainError("constants must be positive")

    @property
    def beta(self) -> float:
        return 1.0 / (self.k_B * self.T)

    @property
    def lambda_T(self) -> float:
        return thermal_wavelength(self.m, self.T, self.hbar, self.k_B)

    @property
    def einstein_d(self) -> float:
        return self.k_B * self.T / self.b

    @property
    def tq_factor(self) -> float:
        """lambda_T^2 q^2, the square of wavelength over lattice scale."""
        lam_q = self.lambda_T * self.q
        return lam_q * lam_q

    @property
    def potential(self) -> CosinePotential:
        return CosinePotential(A=self.A, q=self.q)


_MODES = ("full_cubic", "linearized")


@dataclass(frozen=True)
class EffectivePotentialSpec:
    """Which semiclassical reduction of the potential to use."""

    mode: str
    underlying: CosinePotential
    tq_factor: float

    def __post_init__(self):
        if self.mode not in _MODES:
            raise DomainError(f"mode must be one of {_MODES}")
        if self.tq_factor < 0:
            raise DomainError("tq_factor must be >= 0")

    @classmethod
    def from_system(cls, sys: ThermoSystem, mode: str = "linearized") \
            -> "EffectivePotentialSpec":
        return cls(mode=mode, underlying=sys.potential,
                   tq_factor=sys.tq_factor)


# ---------------------------------------------------------------------------
# quantum potential under the equilibrium closure
# ---------------------------------------------------------------------------

def quantum_potential_boltzmann(pot, x, sys: ThermoSystem):
    """Q = lambda_T^2 [U'' - beta (U')^2 / 2] at x, in J.

    Works for any potential exposing du/d2u; tabulated potentials that are
    too coarse for derivative estimates raise a resolution error.
    """
    lam_sq = sys.lambda_T ** 2
    return lam_sq * (pot.d2u(x) - 0.5 * sys.beta * pot.du(x) ** 2)


def cosine_quantum_potential(pot: CosinePotential, x, sys: ThermoSystem):
    """Closed form for the cosine: -lambda_T^2 q^2 [U + beta (A^2 - U^2)/2]."""
    u = pot.u(x)
    lam_q_sq = (sys.lambda_T * pot.q) ** 2
    return -lam_q_sq * (u + 0.5 * sys.beta * (pot.A ** 2 - u * u))


def effective_potential(x, spec: EffectivePotentialSpec, sys: ThermoSystem):
    """Semiclassical effective potential at x, in J.

    linearized:  (1 - t/2) U
    full_cubic:  [1 - t (1 - beta U / 3) / 2] U          (t = lambda_T^2 q^2)

    Both share the period of the underlying potential.
    """
    u = spec.underlying.u(x)
    t = spec.tq_factor
    if spec.mode == "linearized":
        return (1.0 - 0.5 * t) * u
    return (1.0 - 0.5 * t * (1.0 - sys.beta * u / 3.0)) * u


# ---------------------------------------------------------------------------
# effective diffusivity: period-average route, Bessel route, Arrhenius limit
# ---------------------------------------------------------------------------

def _log_period_mean_exp(f, period: float, sign: float, beta: float) -> float:
    """ln of the period average of exp(sign * beta * f(x)), overflow-safe."""
    probe = f(np.linspace(0.0, period, 513))
    shift = float(np.max(sign * beta * probe))

    def integrand(x):
        return math.exp(sign * beta * float(f(x)) - shift)

    val, abserr = quad(integrand, 0.0, period, epsabs=0.0, epsrel=1e-10,
                       limit=200)
    if not (val > 0.0) or abserr > 1e-8 * val:
        raise IntegrationError(
            f"period-average quadrature failed (value {val}, error {abserr})")
    return shift + math.log(val / period)


def lifson_jackson_deff(spec_or_potential: Union[EffectivePotentialSpec,
                                                 SampledPeriodicPotential],
                        sys: ThermoSystem) -> float:
    """D_eff = D / (<e^{beta U_eff}> <e^{-beta U_eff}>), period averages.

    Adaptive quadrature for analytic potentials; for tabulated ones the
    average is taken over the table (uniform grid, so the arithmetic mean is
    the periodic trapezoid).  Exponentials are max-subtracted, so deep wells
    at low temperature stay inside double range.
    """
    beta = sys.beta
    if isinstance(spec_or_potential, SampledPeriodicPotential):
        g = beta * spec_or_potential.values
        log_plus = float(np.max(g) + np.log(np.mean(np.exp(g - np.max(g)))))
        log_minus = float(np.max(-g) + np.log(np.mean(np.exp(-g - np.max(-g)))))
    else:
        spec = spec_or_potential
        period = spec.underlying.period

        def u_eff(x):
            return effective_potential(x, spec, sys)

        log_plus = _log_period_mean_exp(u_eff, period, +1.0, beta)
        log_minus = _log_period_mean_exp(u_eff, period, -1.0, beta)
    return sys.einstein_d * math.exp(-(log_plus + log_minus))


def bessel_deff(sys: ThermoSystem, mode: str = "linearized") -> float:
    """Closed form D / I0^2(beta A (1 - lambda_T^2 q^2 / 2)).

    Only the linearized effective potential averages to a plain Bessel
    function; the scaled form keeps deep barriers finite.
    """
    if mode != "linearized":
        raise DomainError("the Bessel closed form holds for the linearized "
                          "mode only")
    from .special import bessel_i_scaled
    y = sys.beta * sys.A * (1.0 - 0.5 * sys.tq_factor)
    # I0 is even; negative y only arises past the free-diffusion point
    i0s = bessel_i_scaled(0, abs(y))
    return sys.einstein_d * math.exp(-2.0 * abs(y)) / (i0s * i0s)


def activation_energy(sys: ThermoSystem) -> float:
    """E_a = (2 - lambda_T^2 q^2) A: barrier lowered by tunneling."""
    _require_semiclassical(sys)
    return (2.0 - sys.tq_factor) * sys.A


def arrhenius_prefactor(sys: ThermoSystem) -> float:
    """pi (2 - lambda_T^2 q^2) A / b."""
    _require_semiclassical(sys)
    return math.pi * (2.0 - sys.tq_factor) * sys.A / sys.b


def _require_semiclassical(sys: ThermoSystem) -> None:
    if sys.tq_factor >= 2.0:
        raise SemiclassicalDomainError(
            f"lambda_T^2 q^2 = {sys.tq_factor:.4g} >= 2: the particle is "
            "essentially quantum and the activated-hopping picture is gone")


def arrhenius_deff(sys: ThermoSystem) -> float:
    """Activated-hopping limit: prefactor * exp(-beta E_a).

    Valid deep in the activated regime; a warning is attached when the
    effective barrier beta_eff A drops below 1.
    """
    _require_semiclassical(sys)
    y = effective_beta(sys) * sys.A
    if y < 1.0:
        warnings.warn(
            f"beta_eff A = {y:.3g} < 1: the activated-hopping asymptote is "
            "outside its validity window", ValidityWarning, stacklevel=2)
    return arrhenius_prefactor(sys) * math.exp(-sys.beta
                                               * activation_energy(sys))


def effective_beta(sys: ThermoSystem) -> float:
    """beta_eff = beta (1 - lambda_T^2 q^2 / 2); stationary in T at T_q."""
    return sys.beta * (1.0 - 0.5 * sys.tq_factor)


# ---------------------------------------------------------------------------
# Arrhenius-data inversion and isotope scans
# ---------------------------------------------------------------------------

_EA_UNITS = ("J", "J/mol", "kJ/mol")


@dataclass(frozen=True)
class ArrheniusFit:
    """Model parameters recovered from measured Arrhenius constants.

    E_a is stored per particle; A = E_a/2 (the barrier is half the
    peak-to-valley activation energy) and b = 2 pi A / D0 inverts the
    classical prefactor.
    """

    E_a: float        # J per particle
    D0: float         # m^2/s
    A: float          # J
    b: float          # kg/s
    m: float          # kg
    m_over_b: float   # s

    def __post_init__(self):
        if not (self.E_a > 0 and self.D0 > 0 and self.m > 0):
            raise DomainError("E_a, D0 and m must be positive")
        if not (self.A > 0 and self.b > 0 and self.m_over_b > 0):
            raise DomainError("recovered parameters must be positive")


def fit_from_arrhenius(e_a: float, d0: float, m: float,
                       unit: str = "J") -> ArrheniusFit:
    """Recover (A, b, m/b) from measured activation energy and prefactor."""
    if unit not in _EA_UNITS:
        raise DomainError(f"unknown energy unit {unit!r}; use one of "
                          f"{_EA_UNITS}")
    if e_a <= 0 or d0 <= 0 or m <= 0:
        raise DomainError("E_a, D0 and m must be positive")
    if unit == "J/mol":
        e_a = e_a / N_A
    elif unit == "kJ/mol":
        e_a = e_a * 1e3 / N_A
    a = e_a / 2.0
    b = 2.0 * math.pi * a / d0
    return ArrheniusFit(E_a=e_a, D0=d0, A=a, b=b, m=m, m_over_b=m / b)


#: validity flags attached to isotope-scan rows
FLAG_OK = "ok"
FLAG_BELOW_CROSSOVER = "below_crossover"
FLAG_FREE_QUANTUM = "free_quantum"

SCAN_HEADER = ("isotope", "T", "inv_T", "d_eff_arrhenius", "d_eff_bessel",
               "validity_flag")


def isotope_scan(fit: ArrheniusFit, masses: Sequence, q: float,
                 T_values: Sequence[float]) -> DiffusionReport:
    """Hopping diffusivity table over isotopes and temperatures.

    `masses` holds (label, kg) pairs.  Rows outside the semiclassical window
    are flagged, never dropped: below the free-diffusion point the activated
    law has no meaning and its cell is left empty.
    """
    report = DiffusionReport(header=SCAN_HEADER)
    for label, m in masses:
        for T in T_values:
            sys = ThermoSystem(m=m, b=fit.b, T=T, A=fit.A, q=q)
            t_q = crossover_temperature(m, q)
            d_bessel = bessel_deff(sys)
            if sys.tq_factor >= 2.0:
                flag, d_arr = FLAG_FREE_QUANTUM, None
            else:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", ValidityWarning)
                    d_arr = arrhenius_deff(sys)
                flag = FLAG_BELOW_CROSSOVER if T < t_q else FLAG_OK
            report.append(label, T, 1.0 / T, d_arr, d_bessel, flag)
    return report
