"""The real producer makes the input tables: each session runs the
qdifflab commands once and every test reads from that directory.  The
renderer is exercised strictly across the CSV boundary."""

import subprocess
import sys

import pytest


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("tables")
    for cmd in ("fig1", "fig2", "fig3", "fig4"):
        res = subprocess.run(
            [sys.executable, "-m", "qdifflab.cli", cmd,
             "-o", str(out / f"{cmd}.csv")],
            capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
    return out
