"""Tabular results and the run manifest.

All numeric CSV output goes through one formatter (scientific notation,
12 significant digits, `\\n` endings, header always present) so that repeated
runs with the same inputs are byte-identical.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DomainError


def format_number(x) -> str:
    """One canonical text form per value; None renders as an empty cell."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    return "{:.11e}".format(float(x))


def render_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    out = io.StringIO()
    out.write(",".join(header))
    out.write("\n")
    for row in rows:
        if len(row) != len(header):
            raise DomainError(
                f"row width {len(row)} does not match header width "
                f"{len(header)}")
        out.write(",".join(format_number(v) for v in row))
        out.write("\n")
    return out.getvalue()


def write_csv(path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    # newline="" so the runtime never rewrites line endings
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(render_csv(header, rows))


@dataclass
class DiffusionReport:
    """A rectangular result table with a fixed column list."""

    header: tuple
    rows: list = field(default_factory=list)

    def append(self, *values) -> None:
        if len(values) != len(self.header):
            raise DomainError(
                f"expected {len(self.header)} values, got {len(values)}")
        self.rows.append(tuple(values))

    def column(self, name: str) -> list:
        i = self.header.index(name)
        return [row[i] for row in self.rows]

    def write(self, path) -> None:
        write_csv(path, self.header, self.rows)


@dataclass
class RunManifest:
    """Flat key-value record of one CLI invocation.

    The CSVs listed here are deterministic; the manifest itself carries the
    wall time, so it is the only non-reproducible artifact.
    """

    command: str
    tool_version: str
    params: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    wall_time_s: Optional[float] = None

    def render(self) -> str:
        lines = [f"command = {self.command}",
                 f"tool_version = {self.tool_version}"]
        for key in sorted(self.params):
            lines.append(f"param.{key} = {format_number(self.params[key])}")
        for key in sorted(self.constants):
            lines.append(
                f"constant.{key} = {format_number(self.constants[key])}")
        for out in self.outputs:
            lines.append(f"output = {out}")
        if self.wall_time_s is not None:
            lines.append(f"wall_time_s = {self.wall_time_s:.3f}")
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(self.render())
