"""Finite-difference verification layer for the density evolution laws.

Everything upstream reduces wave-packet spreading to scalar ODEs or closed
forms.  This module evolves the underlying 1D drift-diffusion fields
directly, so the reductions can be checked against a solver that never
heard of them:

* ``evolve_quantum``      full nonlinear flow driven by the curvature
                          potential -hbar^2 (sqrt rho)'' / (2 m sqrt rho)
* ``evolve_gaussian_closure``  linear diffusion with the global coefficient
                          hbar^2/(4 m sigma^2 b) recomputed from the field
                          each step
* ``evolve_thermal``      Smoluchowski flow in a static tilted-cosine
                          effective landscape at inverse temperature beta

All three share an explicit conservative flux update on a uniform
cell-centered grid.  Mass is conserved to roundoff by construction; the
stability bound of each scheme is checked, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Optional

import numpy as np

from .dynamics import PhysicalSystem
from .errors import DomainError, StabilityError
from .potentials import CosinePotential
from .thermo import EffectivePotentialSpec, ThermoSystem, effective_potential

DENSITY_FLOOR = 1e-300
MASS_TOL = 1e-8
BOUNDARY_LEAK_TOL = 1e-10
DOMAIN_SIGMA_FACTOR = 12.0   # line half-width per unit of expected spread
DEFAULT_SAFETY = 0.4
MAX_HALVINGS = 12


# ---------------------------------------------------------------------------
# grid and field containers

@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-centered 1D mesh, periodic or truncated line."""

    kind: str                # "periodic" or "line"
    x0: float
    length: float
    n_cells: int

    def __post_init__(self):
        if self.kind not in ("periodic", "line"):
            raise DomainError(f"unknown grid kind {self.kind!r}")
        if not (isinstance(self.n_cells, int) and self.n_cells >= 64):
            raise DomainError("n_cells must be an integer >= 64")
        if not (math.isfinite(self.length) and self.length > 0):
            raise DomainError("grid length must be positive and finite")
        if not math.isfinite(self.x0):
            raise DomainError("grid origin must be finite")

    @property
    def dx(self) -> float:
        return self.length / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        return self.x0 + (np.arange(self.n_cells) + 0.5) * self.dx

    @classmethod
    def periodic(cls, length: float, n_cells: int, x0: float = 0.0)\
            -> "Grid1D":
        return cls(kind="periodic", x0=x0, length=length, n_cells=n_cells)

    @classmethod
    def line(cls, half_width: float, n_cells: int) -> "Grid1D":
        return cls(kind="line", x0=-half_width, length=2.0 * half_width,
                   n_cells=n_cells)


def auto_line_grid(max_sigma: float, dx: float) -> Grid1D:
    """Line grid wide enough that a spread of ``max_sigma`` never touches
    the boundary at the 1e-10 leak level (half-width 12 sigma)."""
    if not (max_sigma > 0 and dx > 0):
        raise DomainError("max_sigma and dx must be positive")
    half = DOMAIN_SIGMA_FACTOR * max_sigma
    n = max(64, int(math.ceil(2.0 * half / dx)))
    return Grid1D.line(half_width=half, n_cells=n)


@dataclass(frozen=True)
class DensityField:
    """Nonnegative cell-centered density, unit mass on its grid."""

    grid: Grid1D
    rho: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=float)
        if rho.shape != (self.grid.n_cells,):
            raise DomainError("rho must hold one value per cell")
        if not np.all(np.isfinite(rho)):
            raise DomainError("rho must be finite")
        if np.any(rho < 0):
            raise DomainError("rho must be nonnegative")
        mass = float(np.sum(rho)) * self.grid.dx
        if abs(mass - 1.0) > MASS_TOL:
            raise DomainError(f"field mass {mass} is off unity beyond "
                              f"{MASS_TOL}")
        rho = rho.copy()
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)

    @property
    def mass(self) -> float:
        return float(np.sum(self.rho)) * self.grid.dx


def gaussian_field(grid: Grid1D, mean: float, sigma_sq: float,
                   time: float = 0.0) -> DensityField:
    """Discretely normalized Gaussian sampled at cell centers."""
    if sigma_sq <= 0:
        raise DomainError("sigma_sq must be positive")
    x = grid.centers
    rho = np.exp(-0.5 * (x - mean) ** 2 / sigma_sq)
    rho /= np.sum(rho) * grid.dx
    return DensityField(grid=grid, rho=rho, time=time)


def boltzmann_field(grid: Grid1D, u_values: np.ndarray, beta: float,
                    time: float = 0.0) -> DensityField:
    """rho proportional to exp(-beta u), discretely normalized."""
    u = np.asarray(u_values, dtype=float)
    if u.shape != (grid.n_cells,):
        raise DomainError("u_values must hold one value per cell")
    w = np.exp(-beta * (u - np.min(u)))
    w /= np.sum(w) * grid.dx
    return DensityField(grid=grid, rho=w, time=time)


class Moments(NamedTuple):
    mean: float
    sigma_sq: float
    kurtosis: float


def measure_moments(field: DensityField) -> Moments:
    """Mean, variance and normalized kurtosis of the density.

    Periodic grids use the uniform cell sum (trapezoid and midpoint rules
    coincide under periodicity); line grids use the trapezoid rule on cell
    centers.  Both are normalized by the same quadrature of rho, so the
    ratios are insensitive to the discrete mass being 1 only within tight
    tolerance.
    """
    x = field.grid.centers
    rho = field.rho
    if field.grid.kind == "periodic":
        def quad(values):
            return float(np.sum(values)) * field.grid.dx
    else:
        def quad(values):
            return float(np.trapezoid(values, x))
    norm = quad(rho)
    mean = quad(rho * x) / norm
    d = x - mean
    sigma_sq = quad(rho * d * d) / norm
    m4 = quad(rho * d ** 4) / norm
    return Moments(mean=mean, sigma_sq=sigma_sq,
                   kurtosis=m4 / (sigma_sq * sigma_sq))


# ---------------------------------------------------------------------------
# shared stepping machinery

@dataclass(frozen=True)
class PdeTrajectory:
    """Recorded moment history of one evolution plus the final field."""

    times: np.ndarray
    sigma_sq: np.ndarray
    mean: np.ndarray
    kurtosis: np.ndarray
    mass_error: np.ndarray
    final: DensityField

    def __post_init__(self):
        for name in ("times", "sigma_sq", "mean", "kurtosis", "mass_error"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def max_mass_error(self) -> float:
        return float(np.max(self.mass_error))


def _check_leak(rho: np.ndarray, grid: Grid1D, time: float) -> None:
    # truncated-line runs must keep the boundary numerically dark
    if grid.kind != "line":
        return
    peak = float(np.max(rho))
    edge = max(float(rho[0]), float(rho[-1]))
    if edge > BOUNDARY_LEAK_TOL * peak:
        raise StabilityError(
            f"density reached the line boundary at t={time:g} "
            f"(edge/peak {edge / peak:.3e}); widen the grid")


def _run_explicit(rho0: np.ndarray, grid: Grid1D, t_end: float,
                  dt: float, step_fn, record_target: int = 400,
                  clip_noise: bool = False):
    """March ``step_fn(rho, dt) -> rho_new`` from 0 to t_end.

    A step producing a negative cell is rejected and retried in halves,
    up to MAX_HALVINGS within each nominal step.  ``clip_noise`` zeroes
    sub-roundoff negatives instead; it is reserved for linear implicit
    steps, whose global solves dust deep tails with noise of order
    eps * peak. Curvature-driven flows must never receive hard zeros,
    so they keep the rejection path alone.
    """
    n_steps = max(1, int(math.ceil(t_end / dt)))
    stride = max(1, n_steps // record_target)
    rho = rho0.copy()
    t = 0.0
    times, s2s, mus, kurts, merrs = [], [], [], [], []

    def record(rho_now, t_now):
        f = DensityField.__new__(DensityField)
        object.__setattr__(f, "grid", grid)
        object.__setattr__(f, "rho", rho_now)
        object.__setattr__(f, "time", t_now)
        m = measure_moments(f)
        times.append(t_now)
        s2s.append(m.sigma_sq)
        mus.append(m.mean)
        kurts.append(m.kurtosis)
        merrs.append(abs(float(np.sum(rho_now)) * grid.dx - 1.0))

    record(rho, t)
    for k in range(n_steps):
        dt_step = min(dt, t_end - t)
        if dt_step <= 0:
            break
        remaining = dt_step
        halvings = 0
        sub = dt_step
        while remaining > 1e-15 * dt_step:
            trial = step_fn(rho, min(sub, remaining))
            low = float(np.min(trial))
            if low < 0.0:
                if clip_noise and low > -1e-12 * float(np.max(trial)):
                    trial = np.maximum(trial, 0.0)
                else:
                    halvings += 1
                    if halvings > MAX_HALVINGS:
                        raise StabilityError(
                            "negative density persisted after "
                            f"{MAX_HALVINGS} step halvings at t={t:g}")
                    sub *= 0.5
                    continue
            applied = min(sub, remaining)
            rho = trial
            remaining -= applied
        t += dt_step
        if (k + 1) % stride == 0 or k == n_steps - 1:
            _check_leak(rho, grid, t)
            record(rho, t)

    final = DensityField(grid=grid, rho=np.maximum(rho, 0.0), time=t)
    return PdeTrajectory(times=np.array(times), sigma_sq=np.array(s2s),
                         mean=np.array(mus), kurtosis=np.array(kurts),
                         mass_error=np.array(merrs), final=final)


def _validate_run_args(field: DensityField, t_end: float,
                       dt: Optional[float]) -> None:
    if not (math.isfinite(t_end) and t_end >= 0):
        raise DomainError("t_end must be finite and nonnegative")
    if dt is not None and not (math.isfinite(dt) and dt > 0):
        raise DomainError("dt must be positive when given")


def _single_sample(field: DensityField) -> PdeTrajectory:
    m = measure_moments(field)
    return PdeTrajectory(times=np.array([field.time]),
                         sigma_sq=np.array([m.sigma_sq]),
                         mean=np.array([m.mean]),
                         kurtosis=np.array([m.kurtosis]),
                         mass_error=np.array([abs(field.mass - 1.0)]),
                         final=field)


def _face_divergence(j_interior: np.ndarray, n: int, dx: float)\
        -> np.ndarray:
    # line grids: zero flux through the two outer faces
    div = np.empty(n)
    div[0] = j_interior[0]
    div[1:-1] = j_interior[1:] - j_interior[:-1]
    div[-1] = -j_interior[-1]
    return div / dx


# ---------------------------------------------------------------------------
# evolvers

def quantum_dt_bound(sys: PhysicalSystem, dx: float) -> float:
    """Explicit stability limit of the curvature-driven flow.

    Linearized about a smooth field the flux reduces to a fourth-derivative
    term with coefficient hbar^2/4mb, whose central-difference symbol peaks
    at 16/dx^4.
    """
    k4 = sys.hbar ** 2 / (4.0 * sys.m * sys.b)
    return dx ** 4 / (8.0 * k4)


def evolve_quantum(field: DensityField, sys: PhysicalSystem,
                   potential: Optional[CosinePotential] = None,
                   t_end: float = 0.0, dt: Optional[float] = None,
                   safety: float = DEFAULT_SAFETY) -> PdeTrajectory:
    """Evolve d rho/dt = d/dx [ rho d(U+Q)/dx ] / b with the curvature
    potential Q computed from sqrt(rho) by central second differences."""
    _validate_run_args(field, t_end, dt)
    grid = field.grid
    dx = grid.dx
    bound = quantum_dt_bound(sys, dx)
    if dt is None:
        dt = safety * bound
    elif dt > bound:
        raise StabilityError(f"dt {dt:g} exceeds the fourth-order explicit "
                             f"bound {bound:g}")
    if t_end == 0.0:
        return _single_sample(field)

    q_coef = sys.hbar ** 2 / (2.0 * sys.m)
    u = potential.u(grid.centers) if potential is not None else 0.0
    inv_b = 1.0 / sys.b
    periodic = grid.kind == "periodic"

    def step(rho, h):
        s = np.sqrt(np.maximum(rho, DENSITY_FLOOR))
        if periodic:
            lap_s = (np.roll(s, -1) - 2.0 * s + np.roll(s, 1)) / (dx * dx)
            w = u - q_coef * lap_s / s
            grad_w = (np.roll(w, -1) - w) / dx
            rho_face = 0.5 * (rho + np.roll(rho, -1))
            j = -rho_face * grad_w * inv_b       # face i+1/2
            return rho - (h / dx) * (j - np.roll(j, 1))
        s_pad = np.concatenate(([s[0]], s, [s[-1]]))
        lap_s = (s_pad[2:] - 2.0 * s + s_pad[:-2]) / (dx * dx)
        w = u - q_coef * lap_s / s
        grad_w = (w[1:] - w[:-1]) / dx
        rho_face = 0.5 * (rho[1:] + rho[:-1])
        j = -rho_face * grad_w * inv_b           # interior faces
        return rho - _face_divergence(j, rho.size, dx) * h

    return _run_explicit(field.rho, grid, t_end, dt, step)


def closure_diffusivity(sys: PhysicalSystem, sigma_sq: float) -> float:
    """Global diffusion coefficient hbar^2 / (4 m sigma^2 b)."""
    if sigma_sq <= 0:
        raise DomainError("sigma_sq must be positive")
    return sys.hbar ** 2 / (4.0 * sys.m * sigma_sq * sys.b)


def evolve_gaussian_closure(field: DensityField, sys: PhysicalSystem,
                            potential: Optional[CosinePotential] = None,
                            t_end: float = 0.0, dt: Optional[float] = None,
                            stepper: str = "explicit",
                            safety: float = DEFAULT_SAFETY) -> PdeTrajectory:
    """Evolve d rho/dt = d/dx [ rho dU/dx + (hbar^2/4 m sigma^2) d rho/dx ]
    / b, the width-closed linear form; sigma^2 is re-measured from the
    field before every step, making the diffusivity a global scalar."""
    _validate_run_args(field, t_end, dt)
    if stepper not in ("explicit", "semi_implicit"):
        raise DomainError(f"unknown stepper {stepper!r}")
    grid = field.grid
    dx = grid.dx
    periodic = grid.kind == "periodic"
    x = grid.centers
    du = potential.du(x) if potential is not None else np.zeros_like(x)
    inv_b = 1.0 / sys.b
    # drift CFL piece is static; the diffusive piece shrinks as the packet
    # spreads, so the initial width gives the worst case for explicit runs
    drift_bound = dx / max(float(np.max(np.abs(du))) * inv_b, 1e-300)

    def current_d(rho):
        mu = float(np.sum(rho * x)) * dx
        s2 = float(np.sum(rho * (x - mu) ** 2)) * dx
        return closure_diffusivity(sys, s2)

    d0 = current_d(field.rho)
    if stepper == "explicit":
        bound = min(dx * dx / (2.0 * d0), drift_bound)
    else:
        bound = drift_bound
    if dt is None:
        dt = safety * bound
    elif dt > bound:
        raise StabilityError(f"dt {dt:g} exceeds the stability bound "
                             f"{bound:g} of the {stepper} stepper")
    if t_end == 0.0:
        return _single_sample(field)

    if stepper == "semi_implicit":
        try:
            from scipy.linalg import solve_banded
        except ImportError as exc:   # pragma: no cover
            raise StabilityError("semi_implicit stepping needs scipy")\
                from exc

    def drift_tendency(rho):
        # d/dx ( rho dU/dx ) / b, flux form
        if periodic:
            rho_face = 0.5 * (rho + np.roll(rho, -1))
            du_face = 0.5 * (du + np.roll(du, -1))
            j = rho_face * du_face * inv_b
            return (j - np.roll(j, 1)) / dx
        rho_face = 0.5 * (rho[1:] + rho[:-1])
        du_face = 0.5 * (du[1:] + du[:-1])
        j = rho_face * du_face * inv_b
        return _face_divergence(j, rho.size, dx)

    def diffusion_tendency(rho, d_now):
        # d/dx ( D d rho/dx ), flux form
        if periodic:
            g = d_now * (np.roll(rho, -1) - rho) / dx
            return (g - np.roll(g, 1)) / dx
        g = d_now * (rho[1:] - rho[:-1]) / dx
        return _face_divergence(g, rho.size, dx)

    def step_explicit(rho, h):
        d_now = current_d(rho)
        if h > dx * dx / (2.0 * d_now):
            raise StabilityError("dt exceeds the diffusive bound mid-run")
        return rho + h * (diffusion_tendency(rho, d_now)
                          + drift_tendency(rho))

    def step_semi_implicit(rho, h):
        # drift explicit, diffusion backward Euler (tridiagonal solve)
        d_now = current_d(rho)
        rhs = rho + h * drift_tendency(rho)
        lam = h * d_now / (dx * dx)
        n = rho.size
        if periodic:
            # one Fourier solve keeps the circulant structure exact
            sym = 2.0 * lam * (1.0 - np.cos(
                2.0 * np.pi * np.fft.rfftfreq(n) ))
            return np.fft.irfft(np.fft.rfft(rhs) / (1.0 + sym), n)
        ab = np.zeros((3, n))
        ab[0, 1:] = -lam
        ab[2, :-1] = -lam
        ab[1, :] = 1.0 + 2.0 * lam
        ab[1, 0] = 1.0 + lam       # zero-flux ends
        ab[1, -1] = 1.0 + lam
        return solve_banded((1, 1), ab, rhs)

    step = step_explicit if stepper == "explicit" else step_semi_implicit
    return _run_explicit(field.rho, grid, t_end, dt, step,
                         clip_noise=stepper == "semi_implicit")


def _bernoulli(z: np.ndarray) -> np.ndarray:
    # z / (e^z - 1), stable through z = 0
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 1e-12
    safe = np.where(small, 1.0, z)
    out = safe / np.expm1(safe)
    return np.where(small, 1.0 - 0.5 * z, out)


def thermal_face_weights(u_eff: np.ndarray, beta: float, d: float,
                         dx: float, periodic: bool, weighting: str):
    """Per-face flux coefficients (c_lo, c_hi) so that the face flux is
    c_lo * rho_left - c_hi * rho_right.

    ``exponential`` weighting makes the discrete flux vanish identically
    on rho ~ exp(-beta u_eff) (detailed balance on the grid); ``central``
    is the plain second-order average.
    """
    if weighting not in ("exponential", "central"):
        raise DomainError(f"unknown weighting {weighting!r}")
    du_face = (np.roll(u_eff, -1) - u_eff) if periodic \
        else (u_eff[1:] - u_eff[:-1])
    v = -beta * du_face      # dimensionless drift number per face
    scale = d / dx
    if weighting == "exponential":
        c_lo = scale * _bernoulli(-v)
        c_hi = scale * _bernoulli(v)
    else:
        a = v * scale        # drift velocity / dx premultiplied
        c_lo = scale + 0.5 * a
        c_hi = scale - 0.5 * a
    return c_lo, c_hi


def evolve_thermal(field: DensityField, sys: ThermoSystem,
                   spec: EffectivePotentialSpec, t_end: float = 0.0,
                   dt: Optional[float] = None,
                   weighting: str = "exponential",
                   safety: float = DEFAULT_SAFETY) -> PdeTrajectory:
    """Evolve d rho/dt = d/dx [ rho dU_eff/dx + beta^-1 d rho/dx ] / b in a
    static effective landscape; the default exponential face weighting
    keeps the Boltzmann state stationary on the grid exactly."""
    _validate_run_args(field, t_end, dt)
    grid = field.grid
    dx = grid.dx
    periodic = grid.kind == "periodic"
    u_eff = np.asarray(effective_potential(grid.centers, spec, sys),
                       dtype=float)
    d = sys.einstein_d
    c_lo, c_hi = thermal_face_weights(u_eff, sys.beta, d, dx, periodic,
                                      weighting)
    # positivity of the explicit update requires the diagonal to stay
    # nonnegative cell by cell
    if periodic:
        diag = c_lo + np.roll(c_hi, 1)
    else:
        diag = np.zeros(grid.n_cells)
        diag[:-1] += c_lo
        diag[1:] += c_hi
    bound = dx / float(np.max(diag))
    if dt is None:
        dt = safety * bound
    elif dt > bound:
        raise StabilityError(f"dt {dt:g} exceeds the positivity bound "
                             f"{bound:g}")
    if t_end == 0.0:
        return _single_sample(field)

    if periodic:
        def step(rho, h):
            j = c_lo * rho - c_hi * np.roll(rho, -1)
            return rho - (h / dx) * (j - np.roll(j, 1))
    else:
        def step(rho, h):
            j = c_lo * rho[:-1] - c_hi * rho[1:]
            return rho - h * _face_divergence(j, rho.size, dx)

    return _run_explicit(field.rho, grid, t_end, dt, step)


# ---------------------------------------------------------------------------
# canned verification scenarios (shared by the CLI and the acceptance suite)

@dataclass(frozen=True)
class ScenarioReport:
    name: str
    trajectory: PdeTrajectory
    measured: float
    expected: float
    rel_error: float
    mass_error: float
    details: dict = dc_field(default_factory=dict)

    @property
    def summary_lines(self) -> list:
        lines = [f"scenario {self.name}",
                 f"  measured  {self.measured:.6e}",
                 f"  expected  {self.expected:.6e}",
                 f"  rel_error {self.rel_error:.3e}",
                 f"  mass_error {self.mass_error:.3e}"]
        for k in sorted(self.details):
            lines.append(f"  {k} {self.details[k]:.6e}")
        return lines


def _natural_free_system() -> PhysicalSystem:
    # scale-free units: hbar = m = b = 1, unit initial width
    return PhysicalSystem(m=1.0, b=1.0, sigma0_sq=1.0, hbar=1.0)


def _quartic_law(sys: PhysicalSystem, t: np.ndarray) -> np.ndarray:
    return np.sqrt(sys.sigma0_sq ** 2 + sys.hbar ** 2 * t / (sys.m * sys.b))


def scenario_quantum_free(resolution: float = 1.0,
                          t_end: float = 8.0) -> ScenarioReport:
    """Free packet under the full curvature-driven flow: the field's
    sigma^4(t) must track sigma0^4 + hbar^2 t / m b."""
    if resolution <= 0:
        raise DomainError("resolution must be positive")
    sys = _natural_free_system()
    sigma_end = float(_quartic_law(sys, np.array([t_end]))[0]) ** 0.5
    grid = auto_line_grid(max_sigma=sigma_end, dx=0.125 / resolution)
    f0 = gaussian_field(grid, mean=0.0, sigma_sq=sys.sigma0_sq)
    traj = evolve_quantum(f0, sys, t_end=t_end)
    law = _quartic_law(sys, traj.times)
    dev = np.abs(traj.sigma_sq ** 2 / law ** 2 - 1.0)
    kurt_dev = np.max(np.abs(traj.kurtosis / 3.0 - 1.0))
    i = int(np.argmax(dev))
    return ScenarioReport(
        name="quantum-free", trajectory=traj,
        measured=float(traj.sigma_sq[i] ** 2),
        expected=float(law[i] ** 2),
        rel_error=float(np.max(dev)),
        mass_error=traj.max_mass_error,
        details={"kurtosis_rel_dev": float(kurt_dev)})


def scenario_closure_free(resolution: float = 1.0,
                          t_end: float = 8.0) -> ScenarioReport:
    """Free packet under the width-closed linear flow; same quartic law,
    this time with the ODE reduction exact."""
    if resolution <= 0:
        raise DomainError("resolution must be positive")
    sys = _natural_free_system()
    sigma_end = float(_quartic_law(sys, np.array([t_end]))[0]) ** 0.5
    grid = auto_line_grid(max_sigma=sigma_end, dx=0.05 / resolution)
    f0 = gaussian_field(grid, mean=0.0, sigma_sq=sys.sigma0_sq)
    traj = evolve_gaussian_closure(f0, sys, t_end=t_end)
    law = _quartic_law(sys, traj.times)
    dev = np.abs(traj.sigma_sq ** 2 / law ** 2 - 1.0)
    i = int(np.argmax(dev))
    return ScenarioReport(
        name="closure-free", trajectory=traj,
        measured=float(traj.sigma_sq[i] ** 2),
        expected=float(law[i] ** 2),
        rel_error=float(np.max(dev)),
        mass_error=traj.max_mass_error)


def scenario_thermal_cosine(resolution: float = 1.0,
                            n_periods_travel: float = 20.0)\
        -> ScenarioReport:
    """Activated hopping across a cosine landscape: the late-time slope of
    sigma^2 must reproduce the period-averaged diffusivity."""
    if resolution <= 0:
        raise DomainError("resolution must be positive")
    if n_periods_travel < 5:
        raise DomainError("needs at least a few periods of travel")
    from .thermo import lifson_jackson_deff
    sys = ThermoSystem(m=1.0, b=1.0, T=1.0, A=0.4, q=1.0,
                       hbar=1.0, k_B=1.0)
    spec = EffectivePotentialSpec.from_system(sys)
    d_expected = lifson_jackson_deff(spec, sys)
    period = sys.potential.period
    sigma_end = n_periods_travel * period
    t_end = sigma_end ** 2 / (2.0 * d_expected)

    cells_per_period = max(8, int(round(16 * resolution)))
    width = 2.0 * DOMAIN_SIGMA_FACTOR * sigma_end
    n_periods_domain = int(math.ceil(width / period))
    grid = Grid1D.periodic(length=n_periods_domain * period,
                           n_cells=n_periods_domain * cells_per_period,
                           x0=-0.5 * n_periods_domain * period)
    f0 = gaussian_field(grid, mean=0.0, sigma_sq=(2.0 * period) ** 2)
    traj = evolve_thermal(f0, sys, spec, t_end=t_end)

    # slope over the final half, transient discarded
    half = traj.times >= 0.5 * t_end
    slope = np.polyfit(traj.times[half], traj.sigma_sq[half], 1)[0]
    d_measured = 0.5 * float(slope)
    return ScenarioReport(
        name="thermal-cosine", trajectory=traj,
        measured=d_measured, expected=d_expected,
        rel_error=abs(d_measured / d_expected - 1.0),
        mass_error=traj.max_mass_error,
        details={"t_end": t_end,
                 "periods_travelled": sigma_end / period})


SCENARIOS = {
    "quantum-free": scenario_quantum_free,
    "closure-free": scenario_closure_free,
    "thermal-cosine": scenario_thermal_cosine,
}
