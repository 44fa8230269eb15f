import pytest

from qdifflab_plots import cli


class TestMain:
    def test_render_success(self, csv_dir, tmp_path, capsys):
        out = tmp_path / "f1.png"
        code = cli.main(["--figure", "1", "--csv",
                         str(csv_dir / "fig1.csv"), "-o", str(out)])
        assert code == 0
        assert out.exists()
        assert f"wrote {out}" in capsys.readouterr().out

    def test_repeat_csv_overlays(self, csv_dir, tmp_path):
        out = tmp_path / "f3.svg"
        code = cli.main(["--figure", "3",
                         "--csv", str(csv_dir / "fig3.csv"),
                         "--csv", str(csv_dir / "fig3.csv"),
                         "-o", str(out)])
        assert code == 0
        assert out.exists()

    def test_schema_error_exit(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("tau,rate\n0.0,1.0\n")
        code = cli.main(["--figure", "3", "--csv", str(bad),
                         "-o", str(tmp_path / "x.png")])
        assert code == 3
        assert "xi_sq" in capsys.readouterr().err

    def test_missing_file_exit(self, tmp_path):
        code = cli.main(["--figure", "3",
                         "--csv", str(tmp_path / "nope.csv"),
                         "-o", str(tmp_path / "x.png")])
        assert code == 3

    def test_bad_suffix_exit(self, csv_dir, tmp_path, capsys):
        code = cli.main(["--figure", "3",
                         "--csv", str(csv_dir / "fig3.csv"),
                         "-o", str(tmp_path / "x.pdf")])
        assert code == 2
        assert "suffix" in capsys.readouterr().err

    def test_unknown_figure_rejected_by_parser(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            cli.main(["--figure", "7", "--csv", "a.csv",
                      "-o", str(tmp_path / "x.png")])
        assert err.value.code == 2
