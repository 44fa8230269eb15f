"""Command line driving the laboratory end to end.

Each subcommand wires validated inputs into one experiment, writes one CSV
with a fixed column contract plus a flat key-value manifest, and prints a
short summary.  All numeric text goes through the canonical formatter, so
identical invocations produce byte-identical CSV.

Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .constants import ANGSTROM, HBAR, K_B, PARTICLE_MASSES
from .errors import (DomainError, LogDomainError, QdiffError,
                     SemiclassicalDomainError, ValidityWarning)
from .periodic import (dispersion_of_time, free_subdiffusion,
                       log_asymptote_sigma_sq, time_of_dispersion)
from .potentials import CosinePotential
from .dynamics import (DimensionlessParams, PhysicalSystem,
                       integrate_dispersion)
from .pde import SCENARIOS
from .rates import fig2_scan
from .report import RunManifest, write_csv
from .thermo import (crossover_temperature, fit_from_arrhenius,
                     free_diffusion_temperature, isotope_scan)

_USAGE_EXIT, _NUMERICAL_EXIT, _VALIDITY_EXIT = 2, 3, 4

# scenario pass bands mirrored by the acceptance suite
_PDE_TOLERANCES = {"quantum-free": 1e-2, "closure-free": 1e-2,
                   "thermal-cosine": 5e-2}
_PDE_MASS_TOL = 1e-8


class _UsageError(Exception):
    pass


def _float_list(text: str, flag: str) -> list:
    items = [s for s in (part.strip() for part in text.split(",")) if s]
    if not items:
        raise _UsageError(f"{flag} needs at least one value")
    try:
        return [float(s) for s in items]
    except ValueError as exc:
        raise _UsageError(f"{flag}: {exc}") from exc


def _mass_labels(text: str) -> list:
    labels = [s for s in (part.strip() for part in text.split(",")) if s]
    if not labels:
        raise _UsageError("--isotopes needs at least one label")
    for lab in labels:
        if lab not in PARTICLE_MASSES:
            known = ",".join(sorted(PARTICLE_MASSES))
            raise _UsageError(f"unknown particle {lab!r} (known: {known})")
    return labels


def _inverse_temperature_grid(t_min: float, t_max: float, n: int) -> list:
    if not (0 < t_min < t_max) or n < 1:
        raise _UsageError("need 0 < t-min < t-max and t-samples >= 1")
    if n == 1:
        return [t_min]
    inv = np.linspace(1.0 / t_min, 1.0 / t_max, n)
    return [float(1.0 / v) for v in inv]


# ---------------------------------------------------------------------------
# command table: defaults drive both the parser and the config-file merge

_OPTIONS = {
    "fig1": dict(xi0_sq=0.1, tau_end=100.0, samples=2000),
    "fig2": dict(xi0_sq_list=None, points=9, lo=0.01, hi=0.5),
    "fig3": dict(xi0_sq=0.1, alpha=1.0, tau_end=30.0, samples=2000),
    "fig4": dict(ea=20.0, ea_unit="kJ/mol", d0=3.2e-7, isotopes="H,D,T",
                 period_angstrom=3.6, t_min=100.0, t_max=1000.0,
                 t_samples=19),
    "sigma-t": dict(mass="H", b=3.3e-13, barrier=1.67e-20,
                    period_angstrom=3.6, t_start=1e-18, t_end=1e-12,
                    t_samples=25),
    "pde-check": dict(scenario="quantum-free", resolution=1.0, t_end=8.0,
                      travel=20.0),
    "fit": dict(ea=20.0, ea_unit="kJ/mol", d0=3.2e-7, mass="H",
                period_angstrom=3.6),
}

_HELP = {
    "xi0_sq": "initial dimensionless dispersion",
    "xi0_sq_list": "comma-separated initial dispersions (overrides lo/hi)",
    "points": "number of scan points when xi0_sq_list is empty",
    "lo": "scan lower bound", "hi": "scan upper bound",
    "tau_end": "dimensionless horizon",
    "samples": "rows in the CSV",
    "alpha": "dimensionless trap frequency",
    "ea": "activation energy (see --ea-unit)",
    "ea_unit": "unit tag for --ea",
    "d0": "measured Arrhenius prefactor, m^2/s",
    "isotopes": "comma-separated particle labels",
    "period_angstrom": "lattice period, Angstrom",
    "t_min": "lowest temperature, K", "t_max": "highest temperature, K",
    "t_samples": "temperatures, uniform in 1/T",
    "mass": "particle label",
    "b": "friction coefficient, kg/s",
    "barrier": "potential amplitude, J",
    "t_start": "first time, s", "t_end": "last time, s (0 = initial row "
                                         "only for pde-check)",
    "scenario": "verification scenario",
    "resolution": "grid refinement factor",
    "travel": "periods of travel for thermal-cosine",
}

_CHOICES = {"ea_unit": ("J", "J/mol", "kJ/mol"),
            "scenario": tuple(sorted(SCENARIOS)),
            "mass": tuple(sorted(PARTICLE_MASSES))}


def _build_parser(suppress: bool) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdifflab",
        description="wave-packet spreading and quantum-assisted hopping")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)
    for cmd, defaults in _OPTIONS.items():
        sp = subs.add_parser(cmd)
        sp.add_argument("-o", "--output",
                        default=argparse.SUPPRESS if suppress
                        else f"{cmd}.csv",
                        help="CSV path (manifest written alongside)")
        sp.add_argument("--config",
                        default=argparse.SUPPRESS if suppress else None,
                        help="key=value file; flags override it")
        for dest, default in defaults.items():
            flag = "--" + dest.replace("_", "-")
            kwargs = dict(dest=dest, help=_HELP[dest],
                          default=argparse.SUPPRESS if suppress
                          else default)
            if dest in _CHOICES:
                kwargs["choices"] = _CHOICES[dest]
            elif isinstance(default, int):
                kwargs["type"] = int
            elif isinstance(default, float):
                kwargs["type"] = float
            sp.add_argument(flag, **kwargs)
    return parser


def _read_config(path: str, cmd: str) -> dict:
    allowed = dict(_OPTIONS[cmd])
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "output":
            out["output"] = value
            continue
        if key not in allowed:
            raise _UsageError(f"{path}:{lineno}: unknown key {key!r} for "
                              f"{cmd}")
        default = allowed[key]
        if key in _CHOICES:
            if value not in _CHOICES[key]:
                raise _UsageError(f"{path}:{lineno}: {key} must be one of "
                                  f"{_CHOICES[key]}")
            out[key] = value
        elif isinstance(default, int):
            out[key] = int(value)
        elif isinstance(default, float):
            out[key] = float(value)
        else:
            out[key] = value
    return out


# ---------------------------------------------------------------------------
# runners: each returns (header, rows, constants, stdout lines)

def _run_fig1(p: dict):
    if p["tau_end"] == 0.0:
        rows = [(0.0, p["xi0_sq"], 0.0)]
    else:
        traj = integrate_dispersion(DimensionlessParams(
            xi0_sq=p["xi0_sq"], tau_end=p["tau_end"],
            n_samples=p["samples"]))
        rows = list(zip(traj.tau.tolist(), traj.xi_sq.tolist(),
                        traj.rate.tolist()))
    return ("tau", "xi_sq", "dxi_sq_dtau"), rows, {}, \
        [f"rows: {len(rows)}"]


def _run_fig2(p: dict):
    if p["xi0_sq_list"] is not None:
        scan = _float_list(p["xi0_sq_list"], "--xi0-sq-list")
    else:
        if p["points"] < 1:
            raise _UsageError("--points must be at least 1")
        scan = [float(v) for v in
                np.geomspace(p["lo"], p["hi"], p["points"])]
    rows = []
    for point in fig2_scan(scan):
        rows.append((point.xi0_sq, point.tau_at_max, point.max_rate,
                     1.0 / (2.0 * point.xi0_sq)))
    return ("xi0_sq", "tau_at_max", "max_rate", "fit_value"), rows, {}, \
        [f"scanned {len(rows)} widths"]


def _run_fig3(p: dict):
    if p["tau_end"] == 0.0:
        rows = [(0.0, p["xi0_sq"])]
    else:
        traj = integrate_dispersion(DimensionlessParams(
            xi0_sq=p["xi0_sq"], alpha=p["alpha"], tau_end=p["tau_end"],
            n_samples=p["samples"]))
        rows = list(zip(traj.tau.tolist(), traj.xi_sq.tolist()))
    return ("tau", "xi_sq"), rows, {}, [f"rows: {len(rows)}"]


def _run_fig4(p: dict):
    labels = _mass_labels(p["isotopes"])
    fit = fit_from_arrhenius(p["ea"], p["d0"],
                             PARTICLE_MASSES[labels[0]],
                             unit=p["ea_unit"])
    q = 2.0 * math.pi / (p["period_angstrom"] * ANGSTROM)
    temps = _inverse_temperature_grid(p["t_min"], p["t_max"],
                                      p["t_samples"])
    masses = [(lab, PARTICLE_MASSES[lab]) for lab in labels]
    report = isotope_scan(fit, masses, q, temps)
    constants = {f"mass_{lab}": PARTICLE_MASSES[lab] for lab in labels}
    constants.update(fit_A=fit.A, fit_b=fit.b)
    return report.header, report.rows, constants, \
        [f"{len(report.rows)} rows over {len(labels)} isotopes"]


def _run_sigma_t(p: dict):
    m = PARTICLE_MASSES[p["mass"]]
    sys_ = PhysicalSystem(m=m, b=p["b"], sigma0_sq=1e-22)
    times = [float(v) for v in np.geomspace(p["t_start"], p["t_end"],
                                            p["t_samples"])]
    a = p["barrier"]
    pot = None if a == 0.0 else CosinePotential(
        A=a, q=2.0 * math.pi / (p["period_angstrom"] * ANGSTROM))
    header = ("t", "sigma_sq_exact", "sigma_sq_log_asymptote",
              "sigma_sq_free", "roundtrip_residual")
    rows = []
    for t in times:
        free = free_subdiffusion(t, sys_)
        if pot is None:          # no ripple: the exact law IS the free law
            rows.append((t, free, None, free, None))
            continue
        exact = dispersion_of_time(t, sys_, pot)
        try:
            asym = log_asymptote_sigma_sq(t, sys_, pot)
        except LogDomainError:
            asym = None          # below the logarithmic threshold
        residual = abs(time_of_dispersion(exact, sys_, pot) / t - 1.0)
        rows.append((t, exact, asym, free, residual))
    return header, rows, {"mass": m}, [f"rows: {len(rows)}"]


def _run_pde_check(p: dict):
    name = p["scenario"]
    if name == "thermal-cosine":
        report = SCENARIOS[name](resolution=p["resolution"],
                                 n_periods_travel=p["travel"])
    else:
        report = SCENARIOS[name](resolution=p["resolution"],
                                 t_end=p["t_end"])
    traj = report.trajectory
    rows = list(zip(traj.times.tolist(), traj.sigma_sq.tolist(),
                    traj.mean.tolist(), traj.kurtosis.tolist(),
                    traj.mass_error.tolist()))
    header = ("t", "sigma_sq", "mean", "kurtosis", "mass_error")
    if name != "thermal-cosine" and p["t_end"] == 0.0:
        lines = ["zero-duration run, initial moments:",
                 f"  mean      {traj.mean[0]:.6e}",
                 f"  sigma_sq  {traj.sigma_sq[0]:.6e}",
                 f"  kurtosis  {traj.kurtosis[0]:.6e}"]
        return header, rows, {}, lines, 0
    tol = _PDE_TOLERANCES[name]
    ok = report.rel_error <= tol and report.mass_error <= _PDE_MASS_TOL
    lines = list(report.summary_lines)
    lines.append(f"  tolerance {tol:.3e}")
    lines.append("PASS" if ok else "FAIL")
    # the CSV is still written on FAIL so the trajectory can be inspected
    return header, rows, {}, lines, 0 if ok else _NUMERICAL_EXIT


def _run_fit(p: dict):
    m = PARTICLE_MASSES[p["mass"]]
    fit = fit_from_arrhenius(p["ea"], p["d0"], m, unit=p["ea_unit"])
    q = 2.0 * math.pi / (p["period_angstrom"] * ANGSTROM)
    rows = [(fit.A, fit.b, fit.m_over_b,
             crossover_temperature(m, q),
             free_diffusion_temperature(m, q))]
    header = ("A", "b", "m_over_b", "T_q", "T_free")
    return header, rows, {"mass": m}, \
        [f"A = {fit.A:.6e} J, b = {fit.b:.6e} kg/s"]


_RUNNERS = {"fig1": _run_fig1, "fig2": _run_fig2, "fig3": _run_fig3,
            "fig4": _run_fig4, "sigma-t": _run_sigma_t,
            "pde-check": _run_pde_check, "fit": _run_fit}


def _manifest_path(output: Path) -> Path:
    return output.with_name(output.stem + ".manifest.txt")


def main(argv=None) -> int:
    parser = _build_parser(suppress=False)
    given = vars(_build_parser(suppress=True).parse_args(argv))
    cmd = given.pop("command")

    started = time.time()
    try:
        effective = dict(_OPTIONS[cmd])
        effective["output"] = f"{cmd}.csv"
        config_path = given.pop("config", None)
        if config_path:
            effective.update(_read_config(config_path, cmd))
        effective.update(given)

        with warnings.catch_warnings():
            warnings.simplefilter("always", ValidityWarning)
            result = _RUNNERS[cmd](effective)
        header, rows, constants, lines = result[:4]
        code = result[4] if len(result) > 4 else 0

        output = Path(effective["output"])
        write_csv(output, header, rows)
        manifest = RunManifest(
            command=cmd, tool_version=__version__,
            params={k: v for k, v in sorted(effective.items())
                    if k != "output"},
            constants={"hbar": HBAR, "k_B": K_B, **constants},
            outputs=[output.name],
            wall_time_s=time.time() - started)
        manifest.write(_manifest_path(output))
        for line in lines:
            print(line)
        print(f"wrote {output}")
        return code
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return _USAGE_EXIT
    except (DomainError, SemiclassicalDomainError, LogDomainError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return _VALIDITY_EXIT
    except QdiffError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return _NUMERICAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
