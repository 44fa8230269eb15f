"""Render qdifflab CSV tables as figure files.

The renderer is strictly read-only over the CSV contract: every curve is a
column, including the fit overlay on the rate-scan figure, which the
producing command writes into its own `fit_value` column. Nothing is
recomputed here, so a plotted line can always be traced back to bytes in
the input file.

Determinism: the Agg backend, a pinned hash salt for SVG ids, and
timestamp-free metadata make repeated renders of the same CSV
byte-identical in both formats.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "qdifflab-plots"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .errors import RecipeError, SchemaError  # noqa: E402

FIGURE_IDS = (1, 2, 3, 4)
AXIS_MODES = ("linear", "log", "arrhenius")

# the figure each table was made for, and how it is conventionally scaled
_DEFAULT_MODE = {1: "log", 2: "log", 3: "linear", 4: "arrhenius"}

_REQUIRED = {
    1: ("tau", "xi_sq", "dxi_sq_dtau"),
    2: ("xi0_sq", "max_rate", "fit_value"),
    3: ("tau", "xi_sq"),
    4: ("isotope", "T", "d_eff_arrhenius", "d_eff_bessel"),
}
_ARRHENIUS_COLS = ("inv_T", "d_eff_arrhenius", "d_eff_bessel")

_FORMATS = (".png", ".svg")


@dataclass(frozen=True)
class FigureRecipe:
    """One rendering job: which table(s), which figure, where to."""

    figure_id: int
    csv_paths: tuple
    output: Path
    axis_mode: str = ""   # empty picks the figure's conventional mode

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise RecipeError(f"figure_id must be one of {FIGURE_IDS}, "
                              f"got {self.figure_id!r}")
        paths = self.csv_paths
        if isinstance(paths, (str, Path)):
            paths = (paths,)
        paths = tuple(Path(p) for p in paths)
        if not paths:
            raise RecipeError("at least one CSV path is required")
        object.__setattr__(self, "csv_paths", paths)
        object.__setattr__(self, "output", Path(self.output))
        if self.axis_mode and self.axis_mode not in AXIS_MODES:
            raise RecipeError(f"axis_mode must be one of {AXIS_MODES}, "
                              f"got {self.axis_mode!r}")
        if self.output.suffix.lower() not in _FORMATS:
            raise RecipeError(f"output suffix must be one of {_FORMATS}, "
                              f"got {self.output.suffix!r}")

    @property
    def mode(self) -> str:
        return self.axis_mode or _DEFAULT_MODE[self.figure_id]


class Table:
    """A parsed CSV: header order plus one list per column.

    Cells are floats where they parse, None where empty, and the raw
    string otherwise (labels, flags).
    """

    def __init__(self, header: Sequence[str], columns: dict, path: Path):
        self.header = list(header)
        self.columns = columns
        self.path = path

    def __len__(self):
        return len(self.columns[self.header[0]]) if self.header else 0

    def numbers(self, name: str) -> np.ndarray:
        """Column as float array, None and non-numeric cells as NaN."""
        out = [v if isinstance(v, float) else math.nan
               for v in self.columns[name]]
        return np.asarray(out, dtype=float)


def _cell(text: str):
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        return text


def read_table(path: Union[str, Path]) -> Table:
    path = Path(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(f"{path}: no header row")
    header = rows[0]
    columns = {name: [] for name in header}
    for row in rows[1:]:
        if len(row) != len(header):
            raise SchemaError(f"{path}: row width {len(row)} does not "
                              f"match header width {len(header)}")
        for name, text in zip(header, row):
            columns[name].append(_cell(text))
    return Table(header, columns, path)


def _require(table: Table, names: Sequence[str]) -> None:
    missing = [n for n in names if n not in table.header]
    if missing:
        raise SchemaError(f"{table.path}: missing column(s) "
                          f"{', '.join(missing)}")


def _suffix(table: Table, many: bool) -> str:
    return f" [{table.path.stem}]" if many else ""


def _draw_dispersion_history(ax, table: Table, tag: str) -> None:
    # two-curve convention: dispersion solid, its rate dotted
    tau = table.numbers("tau")
    ax.plot(tau, table.numbers("xi_sq"), "-", color="C0",
            label="xi_sq" + tag)
    ax.plot(tau, table.numbers("dxi_sq_dtau"), ":", color="C1",
            label="dxi_sq_dtau" + tag)
    ax.set_xlabel("tau")
    ax.set_ylabel("xi_sq and its rate")


def _draw_rate_scan(ax, table: Table, tag: str) -> None:
    # measured maxima as markers, the table's own fit column as the line
    x = table.numbers("xi0_sq")
    ax.plot(x, table.numbers("max_rate"), "o", color="C0",
            label="max_rate" + tag)
    ax.plot(x, table.numbers("fit_value"), "-", color="C1",
            label="fit_value" + tag)
    ax.set_xlabel("xi0_sq")
    ax.set_ylabel("max d(xi_sq)/d(tau)")


def _draw_settling(ax, table: Table, tag: str) -> None:
    ax.plot(table.numbers("tau"), table.numbers("xi_sq"), "-", color="C0",
            label="xi_sq" + tag)
    ax.set_xlabel("tau")
    ax.set_ylabel("xi_sq")


def _isotope_groups(table: Table):
    order, rows = [], {}
    for i, label in enumerate(table.columns["isotope"]):
        if label not in rows:
            order.append(label)
            rows[label] = []
        rows[label].append(i)
    return [(label, np.asarray(rows[label], dtype=int)) for label in order]


def _draw_isotope_scan(ax, table: Table, tag: str, mode: str) -> None:
    if mode == "arrhenius":
        _require(table, _ARRHENIUS_COLS)
        x_all = 1000.0 * table.numbers("inv_T")
        ax.set_xlabel("1000 / T  [1/K]")
        ax.set_ylabel("ln D_eff")
    else:
        x_all = table.numbers("T")
        ax.set_xlabel("T  [K]")
        ax.set_ylabel("D_eff  [m^2/s]")

    def transform(d):
        if mode != "arrhenius":
            return d
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(d > 0.0, np.log(d), np.nan)

    bessel = transform(table.numbers("d_eff_bessel"))
    arrhenius = transform(table.numbers("d_eff_arrhenius"))
    for k, (label, idx) in enumerate(_isotope_groups(table)):
        color = f"C{k % 10}"
        ax.plot(x_all[idx], bessel[idx], "-", color=color,
                label=f"{label}" + tag)
        ax.plot(x_all[idx], arrhenius[idx], ":", color=color,
                label=f"{label} activated" + tag)


def build_figure(recipe: FigureRecipe):
    """Compose the matplotlib Figure for a recipe without saving it."""
    tables = [read_table(p) for p in recipe.csv_paths]
    for table in tables:
        _require(table, _REQUIRED[recipe.figure_id])
    if recipe.mode == "arrhenius" and recipe.figure_id != 4:
        for table in tables:
            _require(table, _ARRHENIUS_COLS)
        raise RecipeError("arrhenius mode applies to the isotope scan only")

    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=100)
    many = len(tables) > 1
    for table in tables:
        if len(table) == 0:
            continue   # header-only input renders as bare axes
        tag = _suffix(table, many)
        if recipe.figure_id == 1:
            _draw_dispersion_history(ax, table, tag)
        elif recipe.figure_id == 2:
            _draw_rate_scan(ax, table, tag)
        elif recipe.figure_id == 3:
            _draw_settling(ax, table, tag)
        else:
            _draw_isotope_scan(ax, table, tag, recipe.mode)

    if recipe.figure_id != 4:
        if recipe.mode == "log":
            ax.set_xscale("log")
            ax.set_yscale("log")
    elif recipe.mode == "log":
        ax.set_yscale("log")

    if ax.get_legend_handles_labels()[0]:
        ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    return fig


def render(recipe: FigureRecipe) -> Path:
    """Write the recipe's figure file and return its path."""
    fig = build_figure(recipe)
    suffix = recipe.output.suffix.lower()
    # no dates anywhere: repeated renders must be byte-identical
    metadata = ({"Date": None} if suffix == ".svg"
                else {"Software": "qdifflab-plots"})
    try:
        fig.savefig(recipe.output, format=suffix[1:], metadata=metadata)
    finally:
        plt.close(fig)
    return recipe.output
