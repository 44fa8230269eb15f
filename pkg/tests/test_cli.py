"""Command-line contract tests: column layouts, exit codes, determinism.

Commands run in-process through ``cli.main`` so exit codes and outputs are
checked directly; the CSV byte layout is the external contract.
"""

import hashlib
import math

import pytest

from qdifflab import cli

# sha256 of the default fig1 CSV, frozen from the reference environment;
# any solver or formatting drift must be a deliberate, reviewed change
FIG1_DEFAULT_SHA256 = \
    "5362364d6bfde96d3eb6ee5fb242ef60b1b7c87b42fb26d1d66240d7849ab7af"


def run(tmp_path, *argv):
    return cli.main([str(a) for a in argv])


def read_table(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        rows.append([None if c == "" else _maybe_float(c) for c in cells])
    return header, rows


def _maybe_float(cell):
    try:
        return float(cell)
    except ValueError:
        return cell


class TestFig1:
    def test_default_run(self, tmp_path):
        out = tmp_path / "f1.csv"
        assert run(tmp_path, "fig1", "-o", out) == 0
        header, rows = read_table(out)
        assert header == ["tau", "xi_sq", "dxi_sq_dtau"]
        assert len(rows) == 2000
        assert rows[0] == [0.0, 0.1, 0.0]
        # frozen endpoint of the default trajectory
        assert rows[-1][0] == 100.0
        assert rows[-1][1] == pytest.approx(23.9618264929335, rel=1e-9)

    def test_regression_hash(self, tmp_path):
        out = tmp_path / "f1.csv"
        assert run(tmp_path, "fig1", "-o", out) == 0
        digest = hashlib.sha256(out.read_bytes()).hexdigest()
        assert digest == FIG1_DEFAULT_SHA256

    def test_zero_horizon_single_row(self, tmp_path):
        out = tmp_path / "f1.csv"
        assert run(tmp_path, "fig1", "--xi0-sq", 1.0, "--tau-end", 0.0,
                   "-o", out) == 0
        header, rows = read_table(out)
        assert rows == [[0.0, 1.0, 0.0]]

    def test_manifest_written_alongside(self, tmp_path):
        out = tmp_path / "f1.csv"
        run(tmp_path, "fig1", "-o", out)
        manifest = tmp_path / "f1.manifest.txt"
        text = manifest.read_text()
        assert "command = fig1" in text
        assert "output = f1.csv" in text
        assert "param.xi0_sq = 1.00000000000e-01" in text
        assert "constant.hbar = 1.05457181700e-34" in text
        assert "wall_time_s = " in text


class TestFig2:
    def test_default_scan(self, tmp_path):
        out = tmp_path / "f2.csv"
        assert run(tmp_path, "fig2", "-o", out) == 0
        header, rows = read_table(out)
        assert header == ["xi0_sq", "tau_at_max", "max_rate", "fit_value"]
        assert len(rows) == 9
        assert rows[0][0] == pytest.approx(0.01, rel=1e-12)
        assert rows[-1][0] == pytest.approx(0.5, rel=1e-12)
        # the caption line 1/(2 xi0^2), exactly
        for row in rows:
            assert row[3] == pytest.approx(0.5 / row[0], rel=1e-11)
        rates = [row[2] for row in rows]
        assert all(a > b for a, b in zip(rates, rates[1:]))

    def test_explicit_list(self, tmp_path):
        out = tmp_path / "f2.csv"
        assert run(tmp_path, "fig2", "--xi0-sq-list", "0.1,0.05", "-o",
                   out) == 0
        _, rows = read_table(out)
        assert [row[0] for row in rows] == [0.1, 0.05]

    def test_empty_list_is_usage_error(self, tmp_path):
        assert run(tmp_path, "fig2", "--xi0-sq-list", "", "-o",
                   tmp_path / "x.csv") == 2
        assert not (tmp_path / "x.csv").exists()


class TestFig3:
    def test_default_reaches_floor(self, tmp_path):
        out = tmp_path / "f3.csv"
        assert run(tmp_path, "fig3", "-o", out) == 0
        header, rows = read_table(out)
        assert header == ["tau", "xi_sq"]
        assert abs(rows[-1][1] - 1.0) <= 1e-3

    def test_started_at_floor_stays_constant(self, tmp_path):
        out = tmp_path / "f3.csv"
        assert run(tmp_path, "fig3", "--xi0-sq", 1.0, "-o", out) == 0
        _, rows = read_table(out)
        assert max(abs(row[1] - 1.0) for row in rows) <= 1e-9


class TestFig4:
    def test_default_scan(self, tmp_path):
        out = tmp_path / "f4.csv"
        assert run(tmp_path, "fig4", "-o", out) == 0
        header, rows = read_table(out)
        assert header == ["isotope", "T", "inv_T", "d_eff_arrhenius",
                          "d_eff_bessel", "validity_flag"]
        assert len(rows) == 3 * 19
        flags = {row[5] for row in rows}
        assert flags <= {"ok", "below_crossover", "free_quantum"}
        # hopping slows with mass at every temperature
        by_temp = {}
        for label, T, _inv, d_arr, _d2, _flag in rows:
            by_temp.setdefault(T, {})[label] = d_arr
        for T, d in by_temp.items():
            assert d["H"] > d["D"] > d["T"]

    def test_single_point(self, tmp_path):
        out = tmp_path / "f4.csv"
        assert run(tmp_path, "fig4", "--isotopes", "H", "--t-samples", 1,
                   "-o", out) == 0
        _, rows = read_table(out)
        assert len(rows) == 1
        assert rows[0][0] == "H"
        assert rows[0][1] == 100.0

    def test_unknown_isotope_is_usage_error(self, tmp_path):
        assert run(tmp_path, "fig4", "--isotopes", "H,X", "-o",
                   tmp_path / "x.csv") == 2


class TestSigmaT:
    def test_default_run(self, tmp_path):
        out = tmp_path / "st.csv"
        assert run(tmp_path, "sigma-t", "-o", out) == 0
        header, rows = read_table(out)
        assert header == ["t", "sigma_sq_exact", "sigma_sq_log_asymptote",
                          "sigma_sq_free", "roundtrip_residual"]
        assert len(rows) == 25
        # inversion residual stays at solver accuracy
        assert all(row[4] < 1e-8 for row in rows)
        # early times sit below the logarithmic threshold: empty cells
        assert rows[0][2] is None
        assert rows[-1][2] is not None

    def test_flat_barrier_equals_free(self, tmp_path):
        out = tmp_path / "st.csv"
        assert run(tmp_path, "sigma-t", "--barrier", 0.0, "-o", out) == 0
        _, rows = read_table(out)
        for row in rows:
            assert row[1] == row[3]
            assert row[2] is None


class TestPdeCheck:
    def test_closure_scenario_passes(self, tmp_path, capsys):
        out = tmp_path / "pc.csv"
        assert run(tmp_path, "pde-check", "--scenario", "closure-free",
                   "-o", out) == 0
        assert "PASS" in capsys.readouterr().out
        header, rows = read_table(out)
        assert header == ["t", "sigma_sq", "mean", "kurtosis",
                          "mass_error"]
        assert len(rows) > 100
        assert rows[0][0] == 0.0

    def test_zero_duration_prints_moments_only(self, tmp_path, capsys):
        out = tmp_path / "pc.csv"
        assert run(tmp_path, "pde-check", "--scenario", "quantum-free",
                   "--t-end", 0.0, "-o", out) == 0
        text = capsys.readouterr().out
        assert "initial moments" in text
        assert "PASS" not in text
        _, rows = read_table(out)
        assert len(rows) == 1

    def test_unknown_scenario_rejected(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            run(tmp_path, "pde-check", "--scenario", "ballistic")
        assert err.value.code == 2


class TestFit:
    def test_reference_surface(self, tmp_path):
        out = tmp_path / "fit.csv"
        assert run(tmp_path, "fit", "-o", out) == 0
        header, rows = read_table(out)
        assert header == ["A", "b", "m_over_b", "T_q", "T_free"]
        (a, b, m_over_b, t_q, t_free), = rows
        assert abs(a / 1.67e-20 - 1.0) <= 0.01
        assert abs(b / 3.3e-13 - 1.0) <= 0.02
        assert abs(m_over_b / 5e-15 - 1.0) <= 0.05
        assert 36.0 <= t_q <= 38.0
        assert t_free == pytest.approx(t_q / 2.0, rel=1e-12)

    def test_doubling_prefactor_halves_friction(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        run(tmp_path, "fit", "-o", out1)
        run(tmp_path, "fit", "--d0", 6.4e-7, "-o", out2)
        b1 = read_table(out1)[1][0][1]
        b2 = read_table(out2)[1][0][1]
        assert b2 == pytest.approx(b1 / 2.0, rel=1e-12)

    def test_unit_tags_equivalent(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        run(tmp_path, "fit", "--ea", 20.0, "--ea-unit", "kJ/mol",
            "-o", out1)
        run(tmp_path, "fit", "--ea", 20000.0, "--ea-unit", "J/mol",
            "-o", out2)
        assert out1.read_bytes() == out2.read_bytes()


class TestPlumbing:
    @pytest.mark.parametrize("argv", [
        ("fig1",), ("fig2", "--xi0-sq-list", "0.05,0.2"), ("fit",),
        ("sigma-t", "--t-samples", 7),
    ])
    def test_byte_determinism(self, tmp_path, argv):
        out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
        assert run(tmp_path, *argv, "-o", out1) == 0
        assert run(tmp_path, *argv, "-o", out2) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_config_overridden_by_flags(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("xi0_sq = 0.2\ntau_end = 5 # inline note\n")
        out = tmp_path / "f1.csv"
        assert run(tmp_path, "fig1", "--config", cfg, "--tau-end", 7.0,
                   "-o", out) == 0
        text = (tmp_path / "f1.manifest.txt").read_text()
        assert "param.xi0_sq = 2.00000000000e-01" in text   # from config
        assert "param.tau_end = 7.00000000000e+00" in text  # flag wins

    def test_config_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("xi9_sq = 0.2\n")
        assert run(tmp_path, "fig1", "--config", cfg, "-o",
                   tmp_path / "x.csv") == 2

    def test_config_missing_file_rejected(self, tmp_path):
        assert run(tmp_path, "fig1", "--config", tmp_path / "nope.cfg",
                   "-o", tmp_path / "x.csv") == 2

    def test_domain_error_exit_code(self, tmp_path):
        assert run(tmp_path, "fig3", "--alpha", -1.0, "-o",
                   tmp_path / "x.csv") == 4

    def test_csv_line_endings(self, tmp_path):
        out = tmp_path / "fit.csv"
        run(tmp_path, "fit", "-o", out)
        raw = out.read_bytes()
        assert b"\r" not in raw
        assert raw.endswith(b"\n")
