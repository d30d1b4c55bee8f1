import json
import math

import numpy as np
import pytest

from scalocal.cli import main
from scalocal.io import CSV_COLUMNS, load_points


def run(*argv):
    return main([str(a) for a in argv])


class TestGenerate:
    def test_uniform_writes_file_and_summary(self, tmp_path, capsys):
        out = tmp_path / "u.txt"
        assert run("generate", "uniform", "--n", 50, "--d", 2, "--L", 1.0,
                   "--seed", 7, "--out", out) == 0
        assert "50 points" in capsys.readouterr().out
        ps = load_points(out)
        assert ps.n == 50 and ps.d == 2

    def test_uniform_zero_points_exits_1(self, tmp_path, capsys):
        out = tmp_path / "u.txt"
        assert run("generate", "uniform", "--n", 0, "--out", out) == 1
        assert "error" in capsys.readouterr().err

    def test_hierarchy_row_count(self, tmp_path):
        out = tmp_path / "h.txt"
        assert run("generate", "hierarchy", "--n0", 10, "--n1", 10,
                   "--delta1", 0.001, "--out", out) == 0
        assert load_points(out).n == 100

    def test_condensation_member_files(self, tmp_path):
        out = tmp_path / "c.txt"
        assert run("generate", "condensation", "--n-total", 60, "--sites", "20,5",
                   "--delta1", 0.05, "--out", out) == 0
        assert load_points(tmp_path / "c_20sites.txt").n == 60
        assert load_points(tmp_path / "c_5sites.txt").n == 60

    def test_unwritable_path_exits_2(self, tmp_path, capsys):
        out = tmp_path / "missing-dir" / "u.txt"
        assert run("generate", "uniform", "--n", 5, "--out", out) == 2

    def test_bad_flag_exits_1(self, capsys):
        assert run("generate", "uniform", "--n", "not-a-number", "--out", "x") == 1


@pytest.fixture(scope="module")
def points_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "points.txt"
    assert run("generate", "uniform", "--n", 400, "--d", 2, "--seed", 5,
               "--out", path) == 0
    return path


class TestAnalyze:
    def test_csv_output_and_determinism(self, points_file, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        args = ["analyze", points_file, "--q", "0,2", "--e-min", 0.01,
                "--e-max", 1.0, "--per-decade", 4, "--dither", 4, "--seed", 3]
        assert run(*args, "--out", out_a) == 0
        assert run(*args, "--out", out_b) == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        lines = out_a.read_text().strip().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        # 9 scales (2 decades at 4/decade) for each of 2 ranks
        assert len(lines) == 1 + 2 * 9

    def test_reference_populates_derived_columns(self, points_file, tmp_path):
        out = tmp_path / "ref.csv"
        assert run("analyze", points_file, "--q", "0", "--e-min", 0.01,
                   "--e-max", 1.0, "--per-decade", 4, "--dither", 4,
                   "--reference", "brud", "--out", out) == 0
        row = out.read_text().strip().splitlines()[1].split(",")
        assert row[5] != "" and row[6] != "" and row[7] != "" and row[8] != ""

    def test_reference_file_route(self, points_file, tmp_path):
        ref_path = tmp_path / "ref_points.txt"
        assert run("generate", "uniform", "--n", 400, "--d", 2, "--seed", 99,
                   "--out", ref_path) == 0
        out = tmp_path / "out.csv"
        assert run("analyze", points_file, "--q", "0", "--e-min", 0.05,
                   "--e-max", 0.5, "--per-decade", 4, "--dither", 4,
                   "--reference", "file", "--reference-file", ref_path,
                   "--out", out) == 0
        row = out.read_text().strip().splitlines()[1].split(",")
        assert row[5] != "" and row[6] != ""

    def test_json_output_carries_config(self, points_file, tmp_path):
        out = tmp_path / "out.json"
        assert run("analyze", points_file, "--q", "0", "--e-min", 0.05,
                   "--e-max", 0.5, "--dither", 4, "--format", "json",
                   "--out", out) == 0
        payload = json.loads(out.read_text())
        assert payload["config"]["dithers"] == 4
        assert payload["config"]["qs"] == [0.0]

    def test_malformed_file_names_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("# scalocal-points v1 d=2 n=2 L=1\n0.1 0.2\noops 0.4\n")
        assert run("analyze", bad, "--out", tmp_path / "x.csv") == 1
        assert ":3:" in capsys.readouterr().err

    def test_rank_one_exits_1(self, points_file, tmp_path, capsys):
        assert run("analyze", points_file, "--q", "1") == 1
        assert "rank" in capsys.readouterr().err

    def test_plot_writes_png(self, points_file, tmp_path):
        out = tmp_path / "a.csv"
        assert run("analyze", points_file, "--q", "0", "--e-min", 0.01,
                   "--e-max", 1.0, "--per-decade", 4, "--dither", 4,
                   "--reference", "brud", "--out", out, "--plot") == 0
        png = out.with_suffix(".png")
        assert png.exists() and png.stat().st_size > 0

    def test_base10_reporting(self, points_file, tmp_path):
        nat = tmp_path / "nat.csv"
        b10 = tmp_path / "b10.csv"
        common = ["analyze", points_file, "--q", "0", "--e-min", 0.05,
                  "--e-max", 0.5, "--dither", 4]
        assert run(*common, "--out", nat) == 0
        assert run(*common, "--log-base", "base10", "--out", b10) == 0
        s_nat = float(nat.read_text().strip().splitlines()[1].split(",")[3])
        s_b10 = float(b10.read_text().strip().splitlines()[1].split(",")[3])
        assert s_b10 == pytest.approx(s_nat / math.log(10.0))


class TestReference:
    def test_bud_upper_branch_value(self, tmp_path):
        out = tmp_path / "r.csv"
        assert run("reference", "--d", 1, "--L", 1.0, "--q", "0",
                   "--e-min", 1.0, "--e-max", 100.0, "--per-decade", 1,
                   "--out", out) == 0
        rows = [line.split(",") for line in out.read_text().strip().splitlines()[1:]]
        at_ten = [r for r in rows if float(r[0]) == pytest.approx(10.0)][0]
        assert float(at_ten[5]) == pytest.approx(math.log(1.1), rel=1e-12)

    def test_brud_finite_at_boundary(self, tmp_path):
        out = tmp_path / "r.csv"
        assert run("reference", "--d", 2, "--n", 10000, "--q", "0",
                   "--e-min", 0.1, "--e-max", 10.0, "--per-decade", 1,
                   "--out", out) == 0
        rows = [line.split(",") for line in out.read_text().strip().splitlines()[1:]]
        at_one = [r for r in rows if float(r[0]) == pytest.approx(1.0)][0]
        value = float(at_one[5])
        assert value == pytest.approx(2.0 * math.log(2.0), rel=1e-9)

    def test_rank_one_exits_1(self, capsys):
        assert run("reference", "--d", 1, "--q", "1") == 1
        assert "rank" in capsys.readouterr().err


class TestRecipe:
    def test_runs_end_to_end(self, tmp_path):
        recipe = {
            "name": "mini",
            "generate": {"kind": "uniform", "n": 200, "d": 2, "L": 1.0, "seed": 4},
            "analysis": {"qs": [0.0], "e_min": 0.02, "e_max": 1.0,
                         "per_decade": 4, "dithers": 4, "seed": 9,
                         "reference": "brud"},
        }
        rpath = tmp_path / "mini.json"
        rpath.write_text(json.dumps(recipe))
        outdir = tmp_path / "out"
        assert run("recipe", rpath, "--outdir", outdir) == 0
        assert (outdir / "mini_points.txt").exists()
        assert (outdir / "mini_curves.csv").exists()
        assert (outdir / "mini_curves.png").exists()

    def test_condensation_recipe(self, tmp_path):
        recipe = {
            "name": "cond",
            "generate": {"kind": "condensation", "n_total": 120, "sites": [30, 10],
                         "delta1": 0.05, "d": 2, "L": 1.0, "seed": 4},
            "analysis": {"qs": [0.0], "e_min": 0.02, "e_max": 1.0,
                         "per_decade": 4, "dithers": 4, "seed": 9,
                         "reference": "brud"},
        }
        rpath = tmp_path / "cond.json"
        rpath.write_text(json.dumps(recipe))
        outdir = tmp_path / "out"
        assert run("recipe", rpath, "--outdir", outdir) == 0
        assert (outdir / "cond_30sites_curves.csv").exists()
        assert (outdir / "cond_10sites_curves.png").exists()
